#include <gtest/gtest.h>

#include <cmath>

#include <alemesh/alemesh.hpp>

#include "oracles.hpp"

using namespace alemesh;

namespace {
// Pure transport: no spring or angle term, so no mesh is needed.
const ForceModel kFree{nullptr, ForceConfig{0.0, 0.4, 0.0, 85.0}};
}  // namespace

class RadauTableau : public ::testing::TestWithParam<int> {};

TEST_P(RadauTableau, OrderConditions) {
    const int s = GetParam();
    const auto tab = radau_tableau(s);
    ASSERT_EQ(tab.stages(), s);
    EXPECT_EQ(tab.order, 2 * s - 1);
    EXPECT_TRUE(tab.stiffly_accurate);
    // Quadrature conditions B(2s-1): sum b_i c_i^(k-1) = 1/k.
    for (int k = 1; k <= 2 * s - 1; ++k) {
        double sum = 0.0;
        for (int i = 0; i < s; ++i) sum += tab.b[i] * std::pow(tab.c[i], k - 1);
        EXPECT_NEAR(sum, 1.0 / k, 1e-14) << "B(" << k << ")";
    }
    // Stage order C(s): sum_j a_ij c_j^(k-1) = c_i^k / k.
    for (int i = 0; i < s; ++i) {
        for (int k = 1; k <= s; ++k) {
            double sum = 0.0;
            for (int j = 0; j < s; ++j) sum += tab.A(i, j) * std::pow(tab.c[j], k - 1);
            EXPECT_NEAR(sum, std::pow(tab.c[i], k) / k, 1e-14) << "C(" << k << ") row " << i;
        }
    }
    EXPECT_EQ(tab.c[s - 1], 1.0);
    for (int j = 0; j < s; ++j) EXPECT_EQ(tab.A(s - 1, j), tab.b[j]);
}

INSTANTIATE_TEST_SUITE_P(Stages, RadauTableau, ::testing::Values(1, 2, 3));

TEST(RadauTableau, ThreeStageNodes) {
    const auto tab = radau_tableau(3);
    EXPECT_NEAR(tab.c[0], (4.0 - std::sqrt(6.0)) / 10.0, 1e-15);
    EXPECT_NEAR(tab.c[1], (4.0 + std::sqrt(6.0)) / 10.0, 1e-15);
    EXPECT_THROW(radau_tableau(4), ConfigError);
    EXPECT_THROW(radau_tableau(0), ConfigError);
}

TEST(RadauStep, StaticSurfaceWithoutForcesIsIdentity) {
    const auto mesh = generate_torus_mesh(12, 6, 1.0, 0.4);
    const auto torus = make_torus(1.0, 0.4);
    const auto state = DAEState::initial(mesh.positions(), 0.0);
    StepStats stats;
    const auto next = radau_step(state, kFree, torus, radau_tableau(3), 0.05, {}, &stats);
    EXPECT_EQ(next.x, state.x);
    EXPECT_DOUBLE_EQ(next.t, 0.05);
    EXPECT_EQ(stats.newton_iterations, 0);
}

TEST(RadauStep, ExpandingSphereFollowsExactRadius) {
    // Each node moves radially with r(t)^2 = 1 + t; the stage constraints pin the
    // radius, so the step is exact up to the Newton tolerance.
    const auto mesh = generate_icosphere(1);
    const auto sphere = make_sphere();
    auto state = DAEState::initial(mesh.positions(), 0.0);
    for (int n = 0; n < 4; ++n) state = radau_step(state, kFree, sphere, radau_tableau(3), 0.1, {1e-13, 25});
    EXPECT_LE((state.x - std::sqrt(1.4) * mesh.positions()).lpNorm<Eigen::Infinity>(), 1e-12);
    // The exact multiplier is zero; the discrete one only absorbs the quadrature
    // error of the radial law, which is O(tau^(s+1)).
    EXPECT_LE(state.lambda.lpNorm<Eigen::Infinity>(), 1e-4);
}

TEST(RadauStep, KeepsDumbbellNodesOnSurfaceWithSprings) {
    const auto surface = make_dumbbell();
    const auto mesh = generate_revolution_mesh(surface, 0.0, 300);
    const ForceModel forces{&mesh, ForceConfig{500.0, 0.4, 0.0, 85.0}};
    auto state = DAEState::initial(mesh.positions(), 0.0);
    StepStats stats;
    for (int n = 0; n < 3; ++n) {
        state = radau_step(state, forces, surface, radau_tableau(3), 0.001, {1e-10, 25}, &stats);
        EXPECT_LE(constraint_residual(surface, state.x, state.t), 1e-10);
        // Stiffly accurate: the b-weighted update agrees with the last stage.
        EXPECT_LE(stats.update_mismatch, 1e-8);
        EXPECT_GT(stats.newton_iterations, 0);
    }
    EXPECT_NEAR(state.t, 0.003, 1e-15);
}

TEST(StageJacobian, BlockLayout) {
    const auto mesh = generate_icosphere(1);
    const auto sphere = make_sphere();
    const auto tab = radau_tableau(3);
    const double tau = 0.01;
    const Eigen::Index n = static_cast<Eigen::Index>(mesh.num_vertices());
    const Eigen::MatrixXd J(assemble_stage_jacobian(kFree, mesh.positions(), sphere, 0.0, tab, tau));
    ASSERT_EQ(J.rows(), 3 * 4 * n);
    // Without springs the position blocks are the identity.
    EXPECT_EQ(J.topLeftCorner(9 * n, 9 * n), Eigen::MatrixXd::Identity(9 * n, 9 * n));
    // dR_i/dmu_j = a_ij D^T, dC_i/dX_i = D.
    const Eigen::MatrixXd D(constraint_jacobian(sphere, mesh.positions(), 0.0));
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            EXPECT_LE((J.block(i * 3 * n, 9 * n + j * n, 3 * n, n) - tab.A(i, j) * D.transpose()).norm(), 1e-15);
            const Eigen::MatrixXd C = J.block(9 * n + i * n, j * 3 * n, n, 3 * n);
            if (i == j) {
                EXPECT_EQ(C, D);
            } else {
                EXPECT_EQ(C, Eigen::MatrixXd::Zero(n, 3 * n));
            }
        }
    }
    EXPECT_EQ(J.bottomRightCorner(3 * n, 3 * n), Eigen::MatrixXd::Zero(3 * n, 3 * n));
}

TEST(StageJacobian, SpringBlocksScaleWithTableau) {
    const auto mesh = oracle::jittered_icosphere(1, 0.05, 2);
    const auto x = mesh.positions();
    const ForceConfig cfg{7.0, 0.4, 0.0, 85.0};
    const auto tab = radau_tableau(2);
    const double tau = 0.02;
    const Eigen::Index n3 = x.size();
    const Eigen::MatrixXd J(assemble_stage_jacobian(ForceModel{&mesh, cfg}, x, make_sphere(), 0.0, tab, tau));
    const Eigen::MatrixXd JF(spring_jacobian(mesh, x, target_lengths(edge_lengths(mesh, x), cfg.p)));
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            Eigen::MatrixXd expected = -tau * tab.A(i, j) * cfg.k * JF;
            if (i == j) expected += Eigen::MatrixXd::Identity(n3, n3);
            EXPECT_LE((J.block(i * n3, j * n3, n3, n3) - expected).lpNorm<Eigen::Infinity>(), 1e-14);
        }
    }
}

TEST(ConstraintJacobian, RowsHoldGradients) {
    const auto mesh = generate_icosphere(1);
    const auto D = constraint_jacobian(make_sphere(), mesh.positions(), 0.0);
    EXPECT_EQ(D.rows(), static_cast<Eigen::Index>(mesh.num_vertices()));
    EXPECT_EQ(D.nonZeros(), 3 * D.rows());
    const Eigen::MatrixXd Dd(D);
    for (Eigen::Index j = 0; j < D.rows(); ++j) {
        EXPECT_LE((Dd.block(j, 3 * j, 1, 3).transpose() - 2.0 * mesh.positions().segment<3>(3 * j)).norm(), 1e-15);
    }
}

TEST(RadauStep, FailureReportsTimeAndResidual) {
    const auto surface = make_dumbbell();
    const auto mesh = generate_revolution_mesh(surface, 0.0, 200);
    auto state = DAEState::initial(mesh.positions(), 0.0);
    state.t = 0.1;
    project_all(surface, state.x, 0.1);
    try {
        radau_step(state, kFree, surface, radau_tableau(3), 0.01, {1e-10, 0});
        FAIL() << "expected StepFailure";
    } catch (const StepFailure& e) {
        EXPECT_DOUBLE_EQ(e.time(), 0.1);
        EXPECT_GT(e.residual(), 1e-10);
    }
    EXPECT_THROW(radau_step(state, kFree, surface, radau_tableau(3), 0.0), ConfigError);
}

TEST(ForceModel, NullMeshNeedsZeroConstants) {
    const ForceModel bad{nullptr, ForceConfig{1.0, 0.4, 0.0, 85.0}};
    EXPECT_THROW(bad.velocity(Positions::Zero(3)), ConfigError);
    EXPECT_EQ(kFree.velocity(Positions::Ones(6)), Positions::Zero(6));
}

#include <gtest/gtest.h>

#include <alemesh/alemesh.hpp>

#include "oracles.hpp"

using namespace alemesh;

namespace {

const ForceConfig kNoForces{0.0, 0.4, 0.0, 85.0};

}  // namespace

TEST(NormalStep, SphereHandValue) {
    const Positions x = stack(std::vector<Vec3>{Vec3(1, 0, 0), Vec3(0, 0, -1)});
    const Positions y = normal_step(x, 0.0, 0.01, make_sphere());
    EXPECT_NEAR(y[0], 1.005, 1e-15);
    EXPECT_EQ(y[1], 0.0);
    EXPECT_NEAR(y[5], -1.005, 1e-15);
}

TEST(NormalStep, StaticSurfaceDoesNotMove) {
    const auto mesh = generate_torus_mesh(10, 5, 1.0, 0.4);
    EXPECT_EQ(normal_step(mesh.positions(), 0.0, 0.1, make_torus(1.0, 0.4)), mesh.positions());
}

TEST(SplittingStep, StaticSurfaceWithoutForcesIsIdentity) {
    const auto mesh = generate_torus_mesh(10, 5, 1.0, 0.4);
    const Positions y = splitting_step(mesh, mesh.positions(), 0.0, 0.01, make_torus(1.0, 0.4), kNoForces, 5);
    EXPECT_LE((y - mesh.positions()).lpNorm<Eigen::Infinity>(), 1e-15);
}

TEST(SplittingStep, NodesEndOnTheSurface) {
    const auto surface = make_dumbbell();
    const auto mesh = generate_revolution_mesh(surface, 0.0, 300);
    Positions x = mesh.positions();
    for (int n = 0; n < 5; ++n) {
        x = splitting_step(mesh, x, 0.01 * n, 0.01, surface, ForceConfig{500, 0.4, 0, 85}, 25);
        EXPECT_LE(constraint_residual(surface, x, 0.01 * (n + 1)), 1e-12);
    }
}

TEST(WRelaxStep, ImprovesJitteredSphere) {
    const auto mesh = oracle::jittered_icosphere(2, 0.04, 31);
    Positions x = mesh.positions();
    const auto sphere = make_sphere();
    project_all(sphere, x, 0.0);
    const double before = mesh_quality(mesh, x).skew_max;
    for (int n = 0; n < 20; ++n) x = w_relax_step(mesh, x, 0.0, sphere, ForceConfig{500, 0.4, 0, 85}, {});
    EXPECT_LT(mesh_quality(mesh, x).skew_max, before);
    EXPECT_LE(constraint_residual(sphere, x, 0.0), 1e-12);
    EXPECT_THROW(w_relax_step(mesh, x, 0.0, sphere, ForceConfig{}, {0, 0.01, {}}), ConfigError);
}

TEST(AdaptiveSplitting, ThresholdSelectsBranch) {
    const auto surface = make_dumbbell();
    const auto mesh = generate_revolution_mesh(surface, 0.0, 300);
    const ForceConfig forces{500, 0.4, 0, 85};
    bool relaxed = false;
    const Positions a = adaptive_splitting_step(mesh, mesh.positions(), 0.0, 0.01, surface, forces, 25, 0.0, &relaxed);
    EXPECT_TRUE(relaxed);
    EXPECT_EQ(a, splitting_step(mesh, mesh.positions(), 0.0, 0.01, surface, forces, 25));

    const Positions b = adaptive_splitting_step(mesh, mesh.positions(), 0.0, 0.01, surface, forces, 25, 1.0, &relaxed);
    EXPECT_FALSE(relaxed);
    Positions ref = normal_step(mesh.positions(), 0.0, 0.01, surface);
    project_all(surface, ref, 0.01);
    EXPECT_EQ(b, ref);
}

TEST(Evolve, StaticSurfaceNormalMethodIsConstant) {
    const auto mesh = generate_torus_mesh(10, 5, 1.0, 0.4);
    EvolutionMethod m;
    m.tag = Method::normal;
    m.tau = 0.1;
    const auto traj = evolve(mesh, mesh.positions(), make_torus(1.0, 0.4), m, 0.0, 1.0);
    ASSERT_EQ(traj.times.size(), 11u);
    EXPECT_EQ(traj.final_positions, mesh.positions());
    for (const auto& q : traj.quality) EXPECT_EQ(q.skew_max, traj.quality.front().skew_max);
}

TEST(Evolve, LiteratureMapOnDumbbellStaysOnSurface) {
    const auto surface = make_dumbbell();
    const auto mesh = generate_revolution_mesh(surface, 0.0, 300);
    Positions x0 = mesh.positions();
    project_all(surface, x0, 0.0, {1e-14, 100});
    EvolutionMethod m;
    m.tag = Method::literature;
    m.tau = 0.05;
    m.snapshot_times = {0.0, 0.3, 0.6};
    const auto traj = evolve(mesh, x0, surface, m, 0.0, 0.6);
    EXPECT_EQ(traj.times.size(), 13u);
    EXPECT_LE(traj.stats.max_constraint_residual, 1e-13);
    ASSERT_EQ(traj.snapshots.size(), 3u);
    EXPECT_NEAR(traj.snapshots[1].t, 0.3, 1e-15);
    EXPECT_THROW(evolve(mesh, x0, make_sphere(), m, 0.0, 0.6), ConfigError);
}

TEST(Evolve, RejectsBadGrids) {
    const auto mesh = generate_icosphere(1);
    EvolutionMethod m;
    m.tag = Method::normal;
    m.tau = 0.03;
    EXPECT_THROW(evolve(mesh, mesh.positions(), make_sphere(), m, 0.0, 0.1), ConfigError);
    m.tau = 0.0;
    EXPECT_THROW(evolve(mesh, mesh.positions(), make_sphere(), m, 0.0, 0.1), ConfigError);
    m.tau = 0.05;
    EXPECT_THROW(evolve(mesh, mesh.positions(), make_sphere(), m, 0.1, 0.1), ConfigError);
    EXPECT_THROW(evolve(mesh, Positions::Zero(6), make_sphere(), m, 0.0, 0.1), ConfigError);
    m.tag = Method::relax_static;
    EXPECT_THROW(evolve(mesh, mesh.positions(), make_sphere(), m, 0.0, 0.1), ConfigError);
}

TEST(Evolve, ObserverSeesEveryStepAndRunsAreDeterministic) {
    const auto surface = make_dumbbell();
    const auto mesh = generate_revolution_mesh(surface, 0.0, 200);
    EvolutionMethod m;
    m.tag = Method::splitting;
    m.tau = 0.02;
    m.substeps = 10;
    int calls = 0;
    const auto a = evolve(mesh, mesh.positions(), surface, m, 0.0, 0.1, [&](double, const Positions&, const QualityReport&) {
        ++calls;
    });
    const auto b = evolve(mesh, mesh.positions(), surface, m, 0.0, 0.1);
    EXPECT_EQ(calls, 6);
    EXPECT_EQ(a.stats.relaxations, 5);
    EXPECT_EQ(a.final_positions, b.final_positions);
}

TEST(Evolve, RadauAgreesWithSplittingLimitOnSphere) {
    // Without forces both methods reduce to radial transport.
    const auto mesh = generate_icosphere(1);
    EvolutionMethod m;
    m.tag = Method::radau;
    m.tau = 0.05;
    m.forces = kNoForces;
    m.newton = {1e-13, 25};
    const auto traj = evolve(mesh, mesh.positions(), make_sphere(), m, 0.0, 0.2);
    EXPECT_LE((traj.final_positions - std::sqrt(1.2) * mesh.positions()).lpNorm<Eigen::Infinity>(), 1e-12);
    EXPECT_EQ(traj.stats.steps, 4);
    EXPECT_GT(traj.stats.newton_iterations, 0);
}

TEST(RelaxStatic, ZeroStepsRecordsStart) {
    const auto mesh = generate_icosphere(2);
    const auto traj = relax_static(mesh, mesh.positions(), make_sphere(), ForceConfig{}, 0, {});
    ASSERT_EQ(traj.times.size(), 1u);
    EXPECT_EQ(traj.final_positions, mesh.positions());
    EXPECT_THROW(relax_static(mesh, mesh.positions(), make_sphere(), ForceConfig{}, -1, {}), ConfigError);
}

TEST(RelaxStatic, AngleForceReducesLargestAngle) {
    const auto torus = make_torus(1.0, 0.4);
    const auto mesh = perturb(generate_torus_rings(1.0, 0.4, 400), 0.02, 7);
    Positions x = mesh.positions();
    project_all(torus, x, 0.0, {1e-14, 100});
    const auto traj = relax_static(mesh, x, torus, ForceConfig{100, 0.1, 400, 85}, 10, {});
    ASSERT_EQ(traj.quality.size(), 11u);
    EXPECT_LT(traj.quality.back().alpha_max, traj.quality.front().alpha_max);
    EXPECT_NEAR(traj.times.back(), 0.1, 1e-15);
    EXPECT_LE(traj.stats.max_constraint_residual, 1e-12);
}

TEST(Methods, NamesRoundTrip) {
    for (Method m : {Method::normal, Method::literature, Method::radau, Method::splitting,
                     Method::splitting_adaptive, Method::relax_static}) {
        EXPECT_EQ(method_from_string(to_string(m)), m);
    }
    EXPECT_THROW(method_from_string("euler"), ConfigError);
}

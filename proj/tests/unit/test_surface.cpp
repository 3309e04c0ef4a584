#include <gtest/gtest.h>

#include <random>

#include <alemesh/alemesh.hpp>

#include "oracles.hpp"

using namespace alemesh;

namespace {

/// Random points pulled onto the surface, then pushed off it by up to `offset`.
std::vector<Vec3> points_near(const LevelSetSurface& s, double t, Vec3 scale, int count, std::uint64_t seed,
                              double offset = 0.01) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<Vec3> pts;
    while (static_cast<int>(pts.size()) < count) {
        Vec3 x(u(rng), u(rng), u(rng));
        if (x.norm() < 0.2) continue;
        x = x.normalized().cwiseProduct(scale);
        try {
            x = project(s, x, t, {1e-13, 200});
        } catch (const NumericalError&) {
            continue;
        }
        const Vec3 g = s.grad_d(x, t);
        if (g.norm() < 1e-3) continue;
        pts.push_back(x + offset * u(rng) * g.normalized());
    }
    return pts;
}

void expect_consistent_derivatives(const LevelSetSurface& s, double t, Vec3 scale, std::uint64_t seed) {
    for (const Vec3& x : points_near(s, t, scale, 100, seed)) {
        const Vec3 fd = oracle::fd_gradient([&](const Vec3& p) { return s.d(p, t); }, x);
        const Vec3 g = s.grad_d(x, t);
        EXPECT_LE((fd - g).norm(), 1e-5 * std::max(1.0, g.norm())) << s.name() << " at " << x.transpose();
        const double h = 1e-6;
        const double fdt = (s.d(x, t + h) - s.d(x, t - h)) / (2 * h);
        EXPECT_NEAR(s.dt_d(x, t), fdt, 1e-5 * std::max(1.0, std::abs(fdt))) << s.name();
    }
}

}  // namespace

TEST(Catalog, DumbbellMatchesLonghandFormula) {
    const auto s = make_dumbbell();
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-1.2, 1.2);
    for (int i = 0; i < 50; ++i) {
        const Vec3 x(u(rng), u(rng), u(rng));
        const double t = 0.6 * (u(rng) + 1.2) / 2.4;
        EXPECT_NEAR(s.d(x, t), oracle::dumbbell_d(x, t), 1e-12 * std::max(1.0, std::abs(oracle::dumbbell_d(x, t))));
    }
}

TEST(Catalog, FourHoleMatchesLonghandFormula) {
    const auto s = make_four_hole();
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    for (int i = 0; i < 50; ++i) {
        const Vec3 x(u(rng), u(rng), u(rng));
        const double t = (u(rng) + 1.5) / 3.0;
        const double ref = oracle::four_hole_d(x, t);
        EXPECT_NEAR(s.d(x, t), ref, 1e-12 * std::max(1.0, std::abs(ref)));
    }
}

TEST(Catalog, FrozenReferenceValues) {
    // Exact rational inputs evaluated symbolically (20 digits) outside this code base.
    const auto db = make_dumbbell();
    const Vec3 p(0.1, 0.05, 0.7);
    EXPECT_NEAR(db.d(p, 0.3), -1.0114222709975342059, 1e-14);
    const Vec3 g = db.grad_d(p, 0.3);
    EXPECT_NEAR(g[0], 0.2, 1e-14);
    EXPECT_NEAR(g[1], 0.1, 1e-14);
    EXPECT_NEAR(g[2], 2.0628062344486183197, 1e-13);
    EXPECT_NEAR(db.dt_d(p, 0.3), 4.6744653183117827086, 1e-12);

    const auto fh = make_four_hole();
    const Vec3 q(0.05, 0.6, 0.9);
    EXPECT_NEAR(fh.d(q, 0.25), -0.81268414850206611570, 1e-13);
    const Vec3 h = fh.grad_d(q, 0.25);
    EXPECT_NEAR(h[0], 8.2644628099173553719, 1e-12);
    EXPECT_NEAR(h[1], -7.965, 1e-12);
    EXPECT_NEAR(h[2], 0.128025562500000, 1e-13);
    EXPECT_NEAR(fh.dt_d(q, 0.25), 0.43438049995143699750, 1e-12);
}

TEST(Catalog, DerivativesMatchFiniteDifferences) {
    expect_consistent_derivatives(make_dumbbell(), 0.0, Vec3(0.12, 0.12, 1.0), 11);
    expect_consistent_derivatives(make_dumbbell(), 0.37, Vec3(0.15, 0.15, 1.2), 12);
    expect_consistent_derivatives(make_four_hole(), 0.0, Vec3(0.1, 1.0, 1.4), 13);
    expect_consistent_derivatives(make_four_hole(), 0.81, Vec3(0.1, 1.0, 1.4), 14);
    expect_consistent_derivatives(make_torus(1.0, 0.4), 0.0, Vec3(1.4, 1.4, 0.4), 15);
    expect_consistent_derivatives(make_sphere(), 0.5, Vec3(1.2, 1.2, 1.2), 16);
}

TEST(Catalog, SurfaceFromName) {
    EXPECT_EQ(surface_from_name("dumbbell").name(), "dumbbell");
    EXPECT_TRUE(surface_from_name("four_hole").literature_map().has_value());
    EXPECT_TRUE(surface_from_name("torus:1:0.4").is_static());
    EXPECT_NEAR(surface_from_name("sphere:4:0").d(Vec3(2, 0, 0), 3.0), 0.0, 1e-15);
    EXPECT_THROW(surface_from_name("klein_bottle"), ConfigError);
    EXPECT_THROW(surface_from_name("torus:0.4:1"), ConfigError);
    EXPECT_THROW(surface_from_name("torus:1"), ConfigError);
}

TEST(NormalVelocity, SphereHandValue) {
    const Vec3 v = normal_velocity(make_sphere(), Vec3(1, 0, 0), 0.0);
    EXPECT_NEAR(v[0], 0.5, 1e-15);
    EXPECT_NEAR(v[1], 0.0, 1e-15);
    EXPECT_NEAR(v[2], 0.0, 1e-15);
}

TEST(NormalVelocity, StaticTorusIsZero) {
    const auto torus = make_torus(1.0, 0.4);
    for (const Vec3& x : points_near(torus, 0.0, Vec3(1.4, 1.4, 0.4), 20, 3, 0.0)) {
        EXPECT_EQ(normal_velocity(torus, x, 0.0), Vec3::Zero());
    }
}

TEST(NormalVelocity, ParallelToGradientAndMovesTheLevelSet) {
    const auto s = make_dumbbell();
    for (double t : {0.0, 0.2, 0.45}) {
        for (const Vec3& x : points_near(s, t, Vec3(0.12, 0.12, 1.0), 30, 21, 0.0)) {
            const Vec3 v = normal_velocity(s, x, t);
            const Vec3 g = s.grad_d(x, t);
            Vec3 tangent = g.cross(Vec3(0.3, -0.2, 0.9));
            tangent.normalize();
            EXPECT_NEAR(v.dot(tangent), 0.0, 1e-12);
            // d(x + h v, t + h) = O(h^2): the point rides along with the surface.
            const double h = 1e-6;
            EXPECT_NEAR(s.d(x + h * v, t + h) - s.d(x, t), 0.0, 1e-9);
        }
    }
}

TEST(NormalVelocity, DumbbellEquatorMatchesFiniteDifferenceMotion) {
    // On the x1 axis the surface point is x1 = K(t) * sqrt(1 - G(0)) = K(t), so the
    // normal speed there is the time derivative of that root.
    const auto s = make_dumbbell();
    const Vec3 x(0.1, 0.0, 0.0);
    const double h = 1e-6;
    auto root = [&](double t) { return std::sqrt(-oracle::dumbbell_d(Vec3::Zero(), t)); };
    const double speed = (root(h) - root(-h)) / (2 * h);
    const Vec3 v = normal_velocity(s, x, 0.0);
    EXPECT_NEAR(v[0], speed, 1e-5);
    EXPECT_NEAR(v[1], 0.0, 1e-15);
    EXPECT_NEAR(v[2], 0.0, 1e-15);
}

TEST(NormalVelocity, VanishingGradientThrows) {
    EXPECT_THROW(normal_velocity(make_sphere(), Vec3::Zero(), 0.0), SingularSurfaceError);
}

TEST(Projection, SphereClosedForm) {
    const Vec3 p = project(make_sphere(1.0, 0.0), Vec3(2, 0, 0), 0.3);
    EXPECT_NEAR((p - Vec3(1, 0, 0)).norm(), 0.0, 1e-12);
}

TEST(Projection, TorusStaysInSymmetryPlane) {
    const auto torus = make_torus(1.0, 0.4);
    const Vec3 p = project(torus, Vec3(1, 0, 0.5), 0.0);
    EXPECT_LE(std::abs(torus.d(p, 0.0)), 1e-12);
    EXPECT_EQ(p[1], 0.0);
}

TEST(Projection, IdentityOnSurfaceAndIdempotent) {
    const auto s = make_dumbbell();
    for (const Vec3& x : points_near(s, 0.3, Vec3(0.12, 0.12, 1.0), 40, 8, 0.005)) {
        const Vec3 p = project(s, x, 0.3);
        EXPECT_LE(std::abs(s.d(p, 0.3)), 1e-12);
        const Vec3 q = project(s, p, 0.3);
        EXPECT_EQ(p, q);
    }
}

TEST(Projection, FailureCarriesResidual) {
    // One iteration cannot reach 1e-12 from far away.
    try {
        project(make_sphere(), Vec3(5, 0, 0), 0.0, {1e-12, 1});
        FAIL() << "expected ProjectionError";
    } catch (const ProjectionError& e) {
        EXPECT_GT(e.residual(), 1e-12);
    }
}

TEST(Projection, AllNodesAndResidual) {
    const auto mesh = generate_icosphere(2);
    Positions x = 1.3 * mesh.positions();
    const auto s = make_sphere();
    EXPECT_NEAR(constraint_residual(s, x, 0.0), 0.69, 1e-12);
    project_all(s, x, 0.0);
    EXPECT_LE(constraint_residual(s, x, 0.0), 1e-12);
}

TEST(LiteratureMap, IdentityAtTimeZero) {
    const Vec3 x(0.03, -0.07, 0.8);
    EXPECT_EQ(literature_ale_map(LiteratureMap::dumbbell, x, 0.0), x);
    EXPECT_EQ(literature_ale_map(LiteratureMap::four_hole, x, 0.0), x);
}

TEST(LiteratureMap, DumbbellKeepsNodesOnTheSurface) {
    const auto s = make_dumbbell();
    for (const Vec3& x0 : points_near(s, 0.0, Vec3(0.12, 0.12, 1.0), 50, 4, 0.0)) {
        for (int k = 0; k <= 10; ++k) {
            const double t = 0.1 * k;
            const Vec3 x = literature_ale_map(LiteratureMap::dumbbell, x0, t);
            EXPECT_LE(std::abs(s.d(x, t)), 1e-12 + 3.0 * std::abs(s.d(x0, 0.0)));
        }
    }
}

TEST(LiteratureMap, FourHoleResidualFollowsClosedForm) {
    // Substituting the map into d leaves (K(t)^2 - K(0)^2) G(x3^2 / L(0)^2); the map
    // is exact only where that G term vanishes.
    const auto s = make_four_hole();
    for (const Vec3& x0 : points_near(s, 0.0, Vec3(0.1, 1.0, 1.4), 30, 5, 0.0)) {
        for (double t : {0.1, 0.35, 0.8}) {
            const Vec3 x = literature_ale_map(LiteratureMap::four_hole, x0, t);
            const double K0 = four_hole::K(0.0), Kt = four_hole::K(t);
            const double expected = (Kt * Kt - K0 * K0) * four_hole::G(x0[2] * x0[2]) + s.d(x0, 0.0);
            EXPECT_NEAR(s.d(x, t), expected, 1e-12);
        }
    }
}

TEST(LiteratureMap, ComposesBetweenTimes) {
    const Vec3 x0(0.05, 0.02, 0.9);
    const Vec3 direct = literature_ale_map(LiteratureMap::dumbbell, x0, 0.5);
    const Vec3 via = literature_ale_map(LiteratureMap::dumbbell, literature_ale_map(LiteratureMap::dumbbell, x0, 0.2),
                                        0.2, 0.5);
    EXPECT_NEAR((direct - via).norm(), 0.0, 1e-15);
}

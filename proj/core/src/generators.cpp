#include "alemesh/generators.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <random>

#include <fmt/format.h>

#include "alemesh/errors.hpp"

namespace alemesh {

TriMesh generate_icosphere(int subdivisions) {
    if (subdivisions < 0 || subdivisions > kMaxIcosphereSubdivisions) {
        throw ConfigError(fmt::format("icosphere subdivisions must be in [0, {}], got {}",
                                      kMaxIcosphereSubdivisions, subdivisions));
    }
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    std::vector<Vec3> verts = {
        {-1, phi, 0}, {1, phi, 0}, {-1, -phi, 0}, {1, -phi, 0},
        {0, -1, phi}, {0, 1, phi}, {0, -1, -phi}, {0, 1, -phi},
        {phi, 0, -1}, {phi, 0, 1}, {-phi, 0, -1}, {-phi, 0, 1},
    };
    std::vector<Triangle> tris = {
        {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
        {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
        {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
        {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1},
    };
    for (auto& v : verts) v.normalize();

    for (int level = 0; level < subdivisions; ++level) {
        std::map<std::pair<Index, Index>, Index> midpoint;
        auto mid = [&](Index a, Index b) {
            const auto key = std::minmax(a, b);
            if (auto it = midpoint.find(key); it != midpoint.end()) return it->second;
            verts.push_back((0.5 * (verts[a] + verts[b])).normalized());
            const auto id = static_cast<Index>(verts.size() - 1);
            midpoint.emplace(key, id);
            return id;
        };
        std::vector<Triangle> next;
        next.reserve(4 * tris.size());
        for (const auto& t : tris) {
            const Index ab = mid(t[0], t[1]);
            const Index bc = mid(t[1], t[2]);
            const Index ca = mid(t[2], t[0]);
            next.push_back({t[0], ab, ca});
            next.push_back({t[1], bc, ab});
            next.push_back({t[2], ca, bc});
            next.push_back({ab, bc, ca});
        }
        tris = std::move(next);
    }
    return TriMesh::build(std::move(verts), std::move(tris));
}

TriMesh generate_torus_mesh(int n_u, int n_v, double R, double r) {
    if (n_u < 3 || n_v < 3) {
        throw ConfigError(fmt::format("torus grid needs n_u, n_v >= 3, got {}x{}", n_u, n_v));
    }
    if (!(r > 0.0 && r < R)) {
        throw ConfigError(fmt::format("torus radii must satisfy 0 < r < R, got R={} r={}", R, r));
    }
    const double two_pi = 2.0 * std::numbers::pi;
    std::vector<Vec3> verts;
    verts.reserve(static_cast<std::size_t>(n_u) * n_v);
    for (int i = 0; i < n_u; ++i) {
        const double u = two_pi * i / n_u;
        for (int j = 0; j < n_v; ++j) {
            const double v = two_pi * j / n_v;
            const double rho = R + r * std::cos(v);
            verts.emplace_back(rho * std::cos(u), rho * std::sin(u), r * std::sin(v));
        }
    }
    auto id = [&](int i, int j) { return static_cast<Index>(((i + n_u) % n_u) * n_v + (j + n_v) % n_v); };
    std::vector<Triangle> tris;
    tris.reserve(2 * static_cast<std::size_t>(n_u) * n_v);
    for (int i = 0; i < n_u; ++i) {
        for (int j = 0; j < n_v; ++j) {
            // Outward orientation: (d/du) x (d/dv) points away from the tube centre.
            tris.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
            tris.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
        }
    }
    return TriMesh::build(std::move(verts), std::move(tris));
}

TriMesh perturb(const TriMesh& mesh, double amplitude, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-amplitude, amplitude);
    Positions x = mesh.positions();
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        x[i] += dist(rng);
    }
    return mesh.with_positions(x);
}

}  // namespace alemesh

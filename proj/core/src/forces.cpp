#include "alemesh/forces.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "alemesh/errors.hpp"
#include "alemesh/parallel.hpp"

namespace alemesh {

void ForceConfig::validate() const {
    if (!(p > 0.0 && p < 1.0)) throw ConfigError(fmt::format("force.p must lie in (0, 1), got {}", p));
    if (!(k >= 0.0)) throw ConfigError(fmt::format("force.k must be >= 0, got {}", k));
    if (!(k_alpha >= 0.0)) throw ConfigError(fmt::format("force.k_alpha must be >= 0, got {}", k_alpha));
    if (!(alpha_tol_deg > 0.0 && alpha_tol_deg < 180.0)) {
        throw ConfigError(fmt::format("force.alpha_tol_deg must lie in (0, 180), got {}", alpha_tol_deg));
    }
}

std::vector<double> edge_lengths(const TriMesh& mesh, const Positions& x) {
    const auto& edges = mesh.edges();
    std::vector<double> lengths(edges.size());
    for (std::size_t i = 0; i < edges.size(); ++i) {
        lengths[i] = (node(x, edges[i].a) - node(x, edges[i].b)).norm();
        if (!(lengths[i] > kMinEdgeLength)) {
            throw DegenerateEdgeError(i, fmt::format("edge {} ({}, {}) has collapsed to length {:.3e}", i,
                                                     edges[i].a, edges[i].b, lengths[i]));
        }
    }
    return lengths;
}

std::vector<double> target_lengths(std::span<const double> lengths, double p) {
    if (lengths.empty()) throw ConfigError("target_lengths: empty edge list");
    if (!(p > 0.0 && p < 1.0)) throw ConfigError(fmt::format("target_lengths: p must lie in (0, 1), got {}", p));
    const auto [lo_it, hi_it] = std::minmax_element(lengths.begin(), lengths.end());
    const double m = *lo_it;
    const double M = *hi_it;
    if (!(m > 0.0)) throw ConfigError(fmt::format("target_lengths: non-positive length {}", m));
    const double upper = m + (1.0 - p) * (M - m);
    const double lower = m + p * (M - m);
    std::vector<double> targets(lengths.size());
    for (std::size_t i = 0; i < lengths.size(); ++i) {
        const double len = lengths[i];
        if (len >= upper) {
            targets[i] = upper;
        } else if (len <= lower) {
            targets[i] = lower;
        } else {
            targets[i] = len;
        }
    }
    return targets;
}

Positions spring_force(const TriMesh& mesh, const Positions& x, double p) {
    const auto lengths = edge_lengths(mesh, x);
    return spring_force(mesh, x, target_lengths(lengths, p));
}

Positions spring_force(const TriMesh& mesh, const Positions& x, std::span<const double> targets) {
    const auto& edges = mesh.edges();
    if (targets.size() != edges.size()) {
        throw ConfigError(fmt::format("spring_force: {} targets for {} edges", targets.size(), edges.size()));
    }
    // Per-edge force on endpoint a; endpoint b receives the negation.
    std::vector<Vec3> edge_force(edges.size());
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const Vec3 diff = node(x, edges[i].a) - node(x, edges[i].b);
        const double len = diff.norm();
        if (!(len > kMinEdgeLength)) {
            throw DegenerateEdgeError(i, fmt::format("edge {} has collapsed to length {:.3e}", i, len));
        }
        edge_force[i] = ((targets[i] - len) / len) * diff;
    }

    Positions force = Positions::Zero(x.size());
    parallel_for(mesh.num_vertices(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t j = begin; j < end; ++j) {
            const auto v = static_cast<Index>(j);
            Vec3 sum = Vec3::Zero();
            for (Index e : mesh.vertex_edges(v)) {
                sum += edges[e].a == v ? edge_force[e] : Vec3(-edge_force[e]);
            }
            node(force, v) = sum;
        }
    });
    return force;
}

Positions angle_force(const TriMesh& mesh, const Positions& x, double alpha_tol_deg) {
    const double cos_tol = std::cos(alpha_tol_deg * std::numbers::pi / 180.0);
    Positions force = Positions::Zero(x.size());
    const auto& tris = mesh.triangles();
    for (std::size_t t = 0; t < tris.size(); ++t) {
        const auto& tri = tris[t];
        for (int corner = 0; corner < 3; ++corner) {
            const Index apex = tri[corner];
            const Index p = tri[(corner + 1) % 3];
            const Index q = tri[(corner + 2) % 3];
            const Vec3 to_p = node(x, p) - node(x, apex);
            const Vec3 to_q = node(x, q) - node(x, apex);
            const double b = to_p.norm();
            const double c = to_q.norm();
            const double cross = to_p.cross(to_q).norm();
            if (!(cross > 1e-14 * std::max(b, c) * std::max(b, c))) {
                throw DegenerateElementError(t, fmt::format("angle_force: degenerate triangle {}", t));
            }
            const double angle = std::atan2(cross, to_p.dot(to_q)) * 180.0 / std::numbers::pi;
            if (angle <= alpha_tol_deg) continue;

            const Vec3 diff = node(x, p) - node(x, q);
            const double len = diff.norm();
            const double target = std::sqrt(std::max(0.0, b * b + c * c - 2.0 * b * c * cos_tol));
            const Vec3 f = ((target - len) / len) * diff;
            node(force, p) += f;
            node(force, q) -= f;
        }
    }
    return force;
}

Positions ale_velocity(const TriMesh& mesh, const Positions& x, const ForceConfig& config) {
    Positions w = Positions::Zero(x.size());
    if (config.k != 0.0) w += config.k * spring_force(mesh, x, config.p);
    if (config.k_alpha != 0.0) w += config.k_alpha * angle_force(mesh, x, config.alpha_tol_deg);
    return w;
}

Eigen::SparseMatrix<double> spring_jacobian(const TriMesh& mesh, const Positions& x, std::span<const double> targets) {
    const auto& edges = mesh.edges();
    if (targets.size() != edges.size()) {
        throw ConfigError(fmt::format("spring_jacobian: {} targets for {} edges", targets.size(), edges.size()));
    }
    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(36 * edges.size());
    auto add_block = [&](Index row, Index col, const Eigen::Matrix3d& block) {
        for (int r = 0; r < 3; ++r) {
            for (int c = 0; c < 3; ++c) {
                triplets.emplace_back(3 * row + r, 3 * col + c, block(r, c));
            }
        }
    };
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const Vec3 diff = node(x, edges[i].a) - node(x, edges[i].b);
        const double len = diff.norm();
        if (!(len > kMinEdgeLength)) {
            throw DegenerateEdgeError(i, fmt::format("edge {} has collapsed to length {:.3e}", i, len));
        }
        const Vec3 u = diff / len;
        // f_a = l u - (x_a - x_b)  =>  df_a/dx_a = l (I - u u^T) / |e| - I.
        const Eigen::Matrix3d B =
            (targets[i] / len) * (Eigen::Matrix3d::Identity() - u * u.transpose()) - Eigen::Matrix3d::Identity();
        add_block(edges[i].a, edges[i].a, B);
        add_block(edges[i].a, edges[i].b, -B);
        add_block(edges[i].b, edges[i].a, -B);
        add_block(edges[i].b, edges[i].b, B);
    }
    const auto n = static_cast<Eigen::Index>(3 * mesh.num_vertices());
    Eigen::SparseMatrix<double> J(n, n);
    J.setFromTriplets(triplets.begin(), triplets.end());
    return J;
}

}  // namespace alemesh

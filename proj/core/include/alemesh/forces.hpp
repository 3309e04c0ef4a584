#pragma once

#include <span>
#include <vector>

#include <Eigen/SparseCore>

#include "alemesh/mesh.hpp"

namespace alemesh {

/// Parameters of the spring-based ALE velocity w = k F + k_alpha F_alpha.
///
/// The spring term f(e) has units of length, so k carries 1/time and w is a
/// velocity. k_alpha = 0 disables the angle term.
struct ForceConfig {
    double k = 500.0;
    double p = 0.4;
    double k_alpha = 0.0;
    double alpha_tol_deg = 85.0;

    /// Throws ConfigError unless p in (0,1), k >= 0, k_alpha >= 0, 0 < alpha_tol < 180.
    void validate() const;
};

/// Edges shorter than this are treated as collapsed.
inline constexpr double kMinEdgeLength = 1e-14;

std::vector<double> edge_lengths(const TriMesh& mesh, const Positions& x);

/// Clamps each length into [m + p (M - m), m + (1 - p)(M - m)], m and M being
/// the min and max of the list.
std::vector<double> target_lengths(std::span<const double> lengths, double p);

/// F_j = sum over edges e at j of (l_p(e) - |e|) nu_e, nu_e the unit vector from
/// the neighbour towards x_j. Targets come from the current global extrema.
Positions spring_force(const TriMesh& mesh, const Positions& x, double p);

/// Same force with caller-supplied targets (one per edge).
Positions spring_force(const TriMesh& mesh, const Positions& x, std::span<const double> targets);

/// For every triangle corner whose angle exceeds alpha_tol, pulls the opposite
/// edge towards the law-of-cosines length sqrt(b^2 + c^2 - 2 b c cos(alpha_tol)),
/// b and c being the sides meeting at that corner. Contributions from both
/// triangles sharing an edge add up.
Positions angle_force(const TriMesh& mesh, const Positions& x, double alpha_tol_deg);

/// k * spring_force + k_alpha * angle_force.
Positions ale_velocity(const TriMesh& mesh, const Positions& x, const ForceConfig& config);

/// d(spring_force)/dx with the per-edge targets held fixed (3N x 3N).
/// Nonzero blocks only on the diagonal and for node pairs joined by an edge.
Eigen::SparseMatrix<double> spring_jacobian(const TriMesh& mesh, const Positions& x,
                                            std::span<const double> targets);

}  // namespace alemesh

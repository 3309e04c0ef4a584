#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "alemesh/forces.hpp"
#include "alemesh/mesh.hpp"
#include "alemesh/surface.hpp"

namespace alemesh {

struct ButcherTableau {
    Eigen::MatrixXd A;
    Eigen::VectorXd b;
    Eigen::VectorXd c;
    int order = 0;
    bool stiffly_accurate = false;

    int stages() const noexcept { return static_cast<int>(b.size()); }
};

/// Radau IIA tableau with s in {1, 2, 3}; order 2s - 1, stiffly accurate.
ButcherTableau radau_tableau(int s = 3);

/// Node positions, per-node multipliers and time of the constrained system
///   x' = v(x, t) + w(x) - D(x, t)^T lambda,   d(x_j, t) = 0.
struct DAEState {
    Positions x;
    Eigen::VectorXd lambda;
    double t = 0.0;

    /// lambda = 0, the documented start value.
    static DAEState initial(const Positions& x, double t);
};

struct NewtonSettings {
    double tol = 1e-10;
    int max_iter = 25;
};

struct StepStats {
    int newton_iterations = 0;
    double residual = 0.0;
    /// |x^n + tau sum b_i F_i - X_s|_inf; zero up to the Newton residual for stiffly accurate tableaus.
    double update_mismatch = 0.0;
};

/// The ALE velocity pieces: spring/angle forces on a mesh. A null mesh is only
/// allowed when both spring constants are zero (pure transport of free nodes).
struct ForceModel {
    const TriMesh* mesh = nullptr;
    ForceConfig config;

    bool active() const noexcept { return config.k != 0.0 || config.k_alpha != 0.0; }
    Positions velocity(const Positions& x) const;
};

/// Simplified-Newton matrix of the monolithic stage system, unknowns ordered
/// [X_1 .. X_s | mu_1 .. mu_s] with mu_i = tau * Lambda_i, equations
/// [position residuals R_1 .. R_s | constraints d(X_i, t_i)].
///
///   dR_i/dX_j = delta_ij I - tau a_ij k dF/dx   (targets frozen, dv/dx and d(D^T lambda)/dx dropped)
///   dR_i/dmu_j = a_ij D^T
///   dC_i/dX_i = D
///
/// with dF/dx and D evaluated at (positions, t). Size s * 4N.
Eigen::SparseMatrix<double> assemble_stage_jacobian(const ForceModel& forces, const Positions& positions,
                                                    const LevelSetSurface& surface, double t,
                                                    const ButcherTableau& tableau, double tau);

/// Constraint Jacobian D(x, t): N x 3N, row j holds grad d(x_j, t)^T in node j's columns.
Eigen::SparseMatrix<double> constraint_jacobian(const LevelSetSurface& surface, const Positions& x, double t);

/// One step of the implicit Runge-Kutta method on the index-2 system. The stage
/// equations and constraints are solved together by simplified Newton with a
/// Jacobian built and factored once at (x^n, t_n). Throws StepFailure when
/// Newton does not reach newton.tol within newton.max_iter iterations.
DAEState radau_step(const DAEState& state, const ForceModel& forces, const LevelSetSurface& surface,
                    const ButcherTableau& tableau, double tau, const NewtonSettings& newton = {},
                    StepStats* stats = nullptr);

}  // namespace alemesh

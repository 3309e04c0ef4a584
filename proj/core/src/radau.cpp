#include "alemesh/radau.hpp"

#include <cmath>
#include <vector>

#include <Eigen/LU>
#include <Eigen/SparseLU>
#include <fmt/format.h>

#include "alemesh/errors.hpp"

namespace alemesh {

ButcherTableau radau_tableau(int s) {
    ButcherTableau tab;
    switch (s) {
        case 1:
            tab.A = Eigen::MatrixXd::Constant(1, 1, 1.0);
            break;
        case 2:
            tab.A.resize(2, 2);
            tab.A << 5.0 / 12.0, -1.0 / 12.0,
                     3.0 / 4.0, 1.0 / 4.0;
            break;
        case 3: {
            const double r6 = std::sqrt(6.0);
            tab.A.resize(3, 3);
            tab.A << (88.0 - 7.0 * r6) / 360.0, (296.0 - 169.0 * r6) / 1800.0, (-2.0 + 3.0 * r6) / 225.0,
                     (296.0 + 169.0 * r6) / 1800.0, (88.0 + 7.0 * r6) / 360.0, (-2.0 - 3.0 * r6) / 225.0,
                     (16.0 - r6) / 36.0, (16.0 + r6) / 36.0, 1.0 / 9.0;
            break;
        }
        default:
            throw ConfigError(fmt::format("Radau IIA is available for 1, 2 or 3 stages, got {}", s));
    }
    tab.b = tab.A.row(s - 1).transpose();
    tab.c = tab.A.rowwise().sum();
    tab.c[s - 1] = 1.0;
    tab.order = 2 * s - 1;
    tab.stiffly_accurate = true;
    return tab;
}

DAEState DAEState::initial(const Positions& x, double t) {
    return {x, Eigen::VectorXd::Zero(x.size() / 3), t};
}

Positions ForceModel::velocity(const Positions& x) const {
    if (!active()) return Positions::Zero(x.size());
    if (mesh == nullptr) throw ConfigError("nonzero spring constants need a mesh");
    return ale_velocity(*mesh, x, config);
}

Eigen::SparseMatrix<double> constraint_jacobian(const LevelSetSurface& surface, const Positions& x, double t) {
    const auto n = static_cast<Eigen::Index>(x.size() / 3);
    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(3 * static_cast<std::size_t>(n));
    for (Eigen::Index j = 0; j < n; ++j) {
        const Vec3 g = surface.grad_d(node(x, static_cast<Index>(j)), t);
        for (int c = 0; c < 3; ++c) triplets.emplace_back(j, 3 * j + c, g[c]);
    }
    Eigen::SparseMatrix<double> D(n, 3 * n);
    D.setFromTriplets(triplets.begin(), triplets.end());
    return D;
}

Eigen::SparseMatrix<double> assemble_stage_jacobian(const ForceModel& forces, const Positions& positions,
                                                    const LevelSetSurface& surface, double t,
                                                    const ButcherTableau& tableau, double tau) {
    const int s = tableau.stages();
    const auto n3 = positions.size();
    const auto n = n3 / 3;
    const Eigen::Index pos_block = s * n3;

    Eigen::SparseMatrix<double> JF;
    if (forces.config.k != 0.0) {
        if (forces.mesh == nullptr) throw ConfigError("nonzero spring constant needs a mesh");
        const auto targets = target_lengths(edge_lengths(*forces.mesh, positions), forces.config.p);
        JF = spring_jacobian(*forces.mesh, positions, targets);
    }
    const auto D = constraint_jacobian(surface, positions, t);

    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(static_cast<std::size_t>(s) * s * (JF.nonZeros() + 6 * n) + s * n3);

    for (int i = 0; i < s; ++i) {
        const Eigen::Index row0 = i * n3;
        for (Eigen::Index r = 0; r < n3; ++r) triplets.emplace_back(row0 + r, row0 + r, 1.0);
        for (int j = 0; j < s; ++j) {
            const double a = tableau.A(i, j);
            const Eigen::Index col0 = j * n3;
            if (JF.nonZeros() > 0) {
                const double scale = -tau * a * forces.config.k;
                for (Eigen::Index outer = 0; outer < JF.outerSize(); ++outer) {
                    for (Eigen::SparseMatrix<double>::InnerIterator it(JF, outer); it; ++it) {
                        triplets.emplace_back(row0 + it.row(), col0 + it.col(), scale * it.value());
                    }
                }
            }
            // dR_i/dmu_j = a_ij D^T
            const Eigen::Index mu0 = pos_block + j * n;
            for (Eigen::Index outer = 0; outer < D.outerSize(); ++outer) {
                for (Eigen::SparseMatrix<double>::InnerIterator it(D, outer); it; ++it) {
                    triplets.emplace_back(row0 + it.col(), mu0 + it.row(), a * it.value());
                }
            }
        }
        // dC_i/dX_i = D
        const Eigen::Index crow0 = pos_block + i * n;
        for (Eigen::Index outer = 0; outer < D.outerSize(); ++outer) {
            for (Eigen::SparseMatrix<double>::InnerIterator it(D, outer); it; ++it) {
                triplets.emplace_back(crow0 + it.row(), row0 + it.col(), it.value());
            }
        }
    }
    const Eigen::Index size = s * (n3 + n);
    Eigen::SparseMatrix<double> J(size, size);
    J.setFromTriplets(triplets.begin(), triplets.end());
    J.makeCompressed();
    return J;
}

namespace {

/// Right-hand side v + w - D^T Lambda at one stage, with mu = tau * Lambda.
Positions stage_rhs(const ForceModel& forces, const LevelSetSurface& surface, const Positions& X,
                    const Eigen::VectorXd& mu, double t, double tau) {
    const auto n = static_cast<Index>(X.size() / 3);
    Positions f = forces.velocity(X);
    for (Index j = 0; j < n; ++j) {
        const Vec3 xj = node(X, j);
        node(f, j) += normal_velocity(surface, xj, t) - (mu[j] / tau) * surface.grad_d(xj, t);
    }
    return f;
}

}  // namespace

DAEState radau_step(const DAEState& state, const ForceModel& forces, const LevelSetSurface& surface,
                    const ButcherTableau& tableau, double tau, const NewtonSettings& newton, StepStats* stats) {
    if (!(tau > 0.0)) throw ConfigError(fmt::format("time step must be positive, got {}", tau));
    const int s = tableau.stages();
    const auto n3 = state.x.size();
    const auto n = n3 / 3;
    const Eigen::Index pos_block = s * n3;

    std::vector<double> stage_t(s);
    for (int i = 0; i < s; ++i) stage_t[i] = state.t + tableau.c[i] * tau;

    // Unknowns [X_1..X_s | mu_1..mu_s].
    Eigen::VectorXd z(s * (n3 + n));
    {
        Positions v0(n3);
        for (Index j = 0; j < static_cast<Index>(n); ++j) {
            node(v0, j) = normal_velocity(surface, node(state.x, j), state.t);
        }
        for (int i = 0; i < s; ++i) {
            z.segment(i * n3, n3) = state.x + (tableau.c[i] * tau) * v0;
            z.segment(pos_block + i * n, n) = tau * state.lambda;
        }
    }

    std::vector<Positions> rhs(s);
    Eigen::VectorXd residual(z.size());
    auto evaluate = [&]() {
        for (int j = 0; j < s; ++j) {
            rhs[j] = stage_rhs(forces, surface, z.segment(j * n3, n3), z.segment(pos_block + j * n, n), stage_t[j],
                               tau);
        }
        for (int i = 0; i < s; ++i) {
            Positions r = z.segment(i * n3, n3) - state.x;
            for (int j = 0; j < s; ++j) r -= (tau * tableau.A(i, j)) * rhs[j];
            residual.segment(i * n3, n3) = r;
            const Positions Xi = z.segment(i * n3, n3);
            for (Index j = 0; j < static_cast<Index>(n); ++j) {
                residual[pos_block + i * n + j] = surface.d(node(Xi, j), stage_t[i]);
            }
        }
        return residual.lpNorm<Eigen::Infinity>();
    };

    const auto J = assemble_stage_jacobian(forces, state.x, surface, state.t, tableau, tau);
    Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
    lu.compute(J);
    if (lu.info() != Eigen::Success) {
        throw StepFailure(state.t, std::nan(""),
                          fmt::format("singular stage Jacobian at t = {}: {}", state.t, lu.lastErrorMessage()));
    }

    double norm = evaluate();
    int iterations = 0;
    while (!(norm < newton.tol)) {
        if (iterations >= newton.max_iter || !std::isfinite(norm)) {
            throw StepFailure(state.t, norm,
                              fmt::format("simplified Newton did not converge at t = {} (tau = {}): residual {:.3e} "
                                          "after {} iterations",
                                          state.t, tau, norm, iterations));
        }
        const Eigen::VectorXd delta = lu.solve(residual);
        z -= delta;
        ++iterations;
        norm = evaluate();
    }

    DAEState next;
    next.t = state.t + tau;
    const Positions X_last = z.segment((s - 1) * n3, n3);

    // b-weighted update; rhs[] holds the converged stage values.
    Positions x_update = state.x;
    for (int i = 0; i < s; ++i) x_update += (tau * tableau.b[i]) * rhs[i];
    next.x = tableau.stiffly_accurate ? X_last : x_update;

    // Lambda_i = lambda^n + tau sum_j a_ij l_j  =>  l = A^{-1} (Lambda - lambda^n) / tau, per node.
    Eigen::MatrixXd Lambda(n, s);
    for (int i = 0; i < s; ++i) Lambda.col(i) = z.segment(pos_block + i * n, n) / tau;
    const Eigen::MatrixXd rates = ((Lambda.colwise() - state.lambda) / tau) * tableau.A.inverse().transpose();
    next.lambda = state.lambda + tau * (rates * tableau.b);

    if (stats != nullptr) {
        stats->newton_iterations = iterations;
        stats->residual = norm;
        stats->update_mismatch = (x_update - X_last).lpNorm<Eigen::Infinity>();
    }
    return next;
}

}  // namespace alemesh

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "alemesh/forces.hpp"
#include "alemesh/quality.hpp"
#include "alemesh/radau.hpp"
#include "alemesh/splitting.hpp"
#include "alemesh/surface.hpp"

namespace alemesh {

enum class Method { normal, literature, radau, splitting, splitting_adaptive, relax_static };

std::string_view to_string(Method m) noexcept;
/// Throws ConfigError on unknown names.
Method method_from_string(std::string_view name);

struct EvolutionMethod {
    Method tag = Method::splitting;
    double tau = 0.01;
    int substeps = 25;               ///< RK4 substeps per relaxation (splitting variants, relax_static)
    double skew_threshold = kGoodSkewness;  ///< splitting_adaptive only
    double relax_window = 0.01;      ///< relax_static pseudo-time per step
    ForceConfig forces;
    int stages = 3;                  ///< radau only
    NewtonSettings newton;           ///< radau only
    ProjectionSettings projection;
    std::vector<double> snapshot_times;
};

struct Snapshot {
    double t;
    Positions x;
};

struct EvolutionStats {
    int steps = 0;
    long newton_iterations = 0;    ///< radau
    int max_newton_iterations = 0; ///< radau, worst single step
    int relaxations = 0;           ///< splitting variants: steps that ran the w-system
    double max_constraint_residual = 0.0;  ///< over recorded times
};

struct Trajectory {
    std::vector<double> times;
    std::vector<QualityReport> quality;
    std::vector<double> constraint_residual;  ///< max_j |d(x_j, t)| per recorded time
    std::vector<Snapshot> snapshots;
    Positions final_positions;
    EvolutionStats stats;
};

/// Called once per recorded time with (t, positions, quality).
using StepObserver = std::function<void(double, const Positions&, const QualityReport&)>;

/// Steps `method` with fixed tau from t0 to T (T - t0 must be a whole number of
/// steps). Quality is recorded at every step, positions only at the requested
/// snapshot times (nearest step). `literature` evaluates the literature map of
/// the surface from the t0 nodes directly. Step failures propagate as StepFailure
/// after the observer has seen every completed step.
Trajectory evolve(const TriMesh& mesh, const Positions& x0, const LevelSetSurface& surface,
                  const EvolutionMethod& method, double t0, double T, const StepObserver& observer = {});

/// Repeated w_relax_step on a surface frozen at time t (the stationary system).
/// Records quality at the start and after each step; times are pseudo-times
/// step * relax_window.
Trajectory relax_static(const TriMesh& mesh, const Positions& x0, const LevelSetSurface& surface,
                        const ForceConfig& forces, int steps, const RelaxSettings& settings, double t = 0.0,
                        const StepObserver& observer = {});

}  // namespace alemesh

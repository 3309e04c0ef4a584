#pragma once

#include "alemesh/forces.hpp"
#include "alemesh/mesh.hpp"
#include "alemesh/quality.hpp"
#include "alemesh/surface.hpp"

namespace alemesh {

/// Explicit Euler on the pure normal motion: x_j <- x_j + tau v(x_j, t). No projection.
Positions normal_step(const Positions& x, double t, double tau, const LevelSetSurface& surface);

struct RelaxSettings {
    int substeps = 25;
    double window = 0.01;  ///< pseudo-time integrated by one relaxation step
    ProjectionSettings projection;
};

/// Integrates x' = w(x) with classical RK4 over `settings.substeps` equal substeps
/// spanning `settings.window`, projecting every node onto {d(., t_target) = 0}
/// after each substep. The surface is frozen at t_target.
Positions w_relax_step(const TriMesh& mesh, const Positions& x, double t_target, const LevelSetSurface& surface,
                       const ForceConfig& forces, const RelaxSettings& settings);

/// Lie splitting over [t, t + tau]: normal_step from t, then w_relax_step at
/// t + tau with window tau. The order is fixed: transport first, relax second.
Positions splitting_step(const TriMesh& mesh, const Positions& x, double t, double tau,
                         const LevelSetSurface& surface, const ForceConfig& forces, int substeps,
                         const ProjectionSettings& projection = {});

/// Quality-gated splitting: normal_step, then relax only if the transported
/// mesh has skew_max > skew_threshold; otherwise just project the nodes.
/// `relaxed` (optional) reports which branch ran.
Positions adaptive_splitting_step(const TriMesh& mesh, const Positions& x, double t, double tau,
                                  const LevelSetSurface& surface, const ForceConfig& forces, int substeps,
                                  double skew_threshold, bool* relaxed = nullptr,
                                  const ProjectionSettings& projection = {});

}  // namespace alemesh

#include "alemesh/splitting.hpp"

#include <fmt/format.h>

#include "alemesh/errors.hpp"
#include "alemesh/parallel.hpp"

namespace alemesh {

Positions normal_step(const Positions& x, double t, double tau, const LevelSetSurface& surface) {
    Positions next = x;
    if (surface.is_static()) return next;
    const auto n = static_cast<std::size_t>(x.size() / 3);
    parallel_for(n, [&](std::size_t begin, std::size_t end) {
        for (std::size_t j = begin; j < end; ++j) {
            const auto idx = static_cast<Index>(j);
            node(next, idx) += tau * normal_velocity(surface, node(x, idx), t);
        }
    });
    return next;
}

Positions w_relax_step(const TriMesh& mesh, const Positions& x, double t_target, const LevelSetSurface& surface,
                       const ForceConfig& forces, const RelaxSettings& settings) {
    if (settings.substeps < 1) {
        throw ConfigError(fmt::format("relaxation needs at least one substep, got {}", settings.substeps));
    }
    const double h = settings.window / settings.substeps;
    Positions y = x;
    for (int sub = 0; sub < settings.substeps; ++sub) {
        if (forces.k != 0.0 || forces.k_alpha != 0.0) {
            const Positions k1 = ale_velocity(mesh, y, forces);
            const Positions k2 = ale_velocity(mesh, y + (0.5 * h) * k1, forces);
            const Positions k3 = ale_velocity(mesh, y + (0.5 * h) * k2, forces);
            const Positions k4 = ale_velocity(mesh, y + h * k3, forces);
            y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
        project_all(surface, y, t_target, settings.projection);
    }
    return y;
}

Positions splitting_step(const TriMesh& mesh, const Positions& x, double t, double tau,
                         const LevelSetSurface& surface, const ForceConfig& forces, int substeps,
                         const ProjectionSettings& projection) {
    const Positions transported = normal_step(x, t, tau, surface);
    return w_relax_step(mesh, transported, t + tau, surface, forces, {substeps, tau, projection});
}

Positions adaptive_splitting_step(const TriMesh& mesh, const Positions& x, double t, double tau,
                                  const LevelSetSurface& surface, const ForceConfig& forces, int substeps,
                                  double skew_threshold, bool* relaxed, const ProjectionSettings& projection) {
    Positions transported = normal_step(x, t, tau, surface);
    const bool needs_relax = mesh_quality(mesh, transported).skew_max > skew_threshold;
    if (relaxed != nullptr) *relaxed = needs_relax;
    if (needs_relax) {
        return w_relax_step(mesh, transported, t + tau, surface, forces, {substeps, tau, projection});
    }
    project_all(surface, transported, t + tau, projection);
    return transported;
}

}  // namespace alemesh

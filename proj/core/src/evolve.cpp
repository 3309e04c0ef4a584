#include "alemesh/evolve.hpp"

#include <cmath>

#include <fmt/format.h>

#include "alemesh/errors.hpp"

namespace alemesh {

std::string_view to_string(Method m) noexcept {
    switch (m) {
        case Method::normal: return "normal";
        case Method::literature: return "literature";
        case Method::radau: return "radau";
        case Method::splitting: return "splitting";
        case Method::splitting_adaptive: return "splitting_adaptive";
        case Method::relax_static: return "relax_static";
    }
    return "unknown";
}

Method method_from_string(std::string_view name) {
    for (Method m : {Method::normal, Method::literature, Method::radau, Method::splitting,
                     Method::splitting_adaptive, Method::relax_static}) {
        if (name == to_string(m)) return m;
    }
    throw ConfigError(fmt::format("unknown method '{}' (expected normal, literature, radau, splitting, "
                                  "splitting_adaptive, relax_static)",
                                  name));
}

namespace {

int step_count(double t0, double T, double tau) {
    if (!(tau > 0.0)) throw ConfigError(fmt::format("time step must be positive, got {}", tau));
    if (!(T > t0)) throw ConfigError(fmt::format("end time {} must exceed start time {}", T, t0));
    const double ratio = (T - t0) / tau;
    const long steps = std::lround(ratio);
    if (std::abs(ratio - static_cast<double>(steps)) > 1e-9 * std::max(1.0, ratio)) {
        throw ConfigError(fmt::format("interval [{}, {}] is not a whole number of steps of {}", t0, T, tau));
    }
    return static_cast<int>(steps);
}

}  // namespace

Trajectory evolve(const TriMesh& mesh, const Positions& x0, const LevelSetSurface& surface,
                  const EvolutionMethod& method, double t0, double T, const StepObserver& observer) {
    if (method.tag == Method::relax_static) {
        throw ConfigError("relax_static is a stationary method; use relax_static() / the relax command");
    }
    if (method.tag == Method::literature && !surface.literature_map()) {
        throw ConfigError(fmt::format("surface '{}' has no literature ALE map", surface.name()));
    }
    if (static_cast<std::size_t>(x0.size()) != 3 * mesh.num_vertices()) {
        throw ConfigError("initial positions do not match the mesh");
    }
    method.forces.validate();
    const int steps = step_count(t0, T, method.tau);

    std::vector<int> snapshot_steps;
    for (double s : method.snapshot_times) {
        const long n = std::lround((s - t0) / method.tau);
        if (n >= 0 && n <= steps) snapshot_steps.push_back(static_cast<int>(n));
    }

    Trajectory traj;
    auto record = [&](int n, const Positions& x) {
        const double t = t0 + n * method.tau;
        const auto q = mesh_quality(mesh, x);
        const double res = constraint_residual(surface, x, t);
        traj.times.push_back(t);
        traj.quality.push_back(q);
        traj.constraint_residual.push_back(res);
        traj.stats.max_constraint_residual = std::max(traj.stats.max_constraint_residual, res);
        for (int s : snapshot_steps) {
            if (s == n) {
                traj.snapshots.push_back({t, x});
                break;
            }
        }
        if (observer) observer(t, x, q);
    };

    const ForceModel force_model{&mesh, method.forces};
    const auto tableau = method.tag == Method::radau ? radau_tableau(method.stages) : ButcherTableau{};
    DAEState state = DAEState::initial(x0, t0);
    Positions x = x0;
    record(0, x);

    for (int n = 0; n < steps; ++n) {
        const double t = t0 + n * method.tau;
        const double t_next = t0 + (n + 1) * method.tau;
        switch (method.tag) {
            case Method::normal:
                x = normal_step(x, t, method.tau, surface);
                break;
            case Method::literature:
                for (Index j = 0; j < static_cast<Index>(mesh.num_vertices()); ++j) {
                    node(x, j) = literature_ale_map(*surface.literature_map(), node(x0, j), t0, t_next);
                }
                break;
            case Method::splitting:
                x = splitting_step(mesh, x, t, method.tau, surface, method.forces, method.substeps, method.projection);
                ++traj.stats.relaxations;
                break;
            case Method::splitting_adaptive: {
                bool relaxed = false;
                x = adaptive_splitting_step(mesh, x, t, method.tau, surface, method.forces, method.substeps,
                                            method.skew_threshold, &relaxed, method.projection);
                traj.stats.relaxations += relaxed ? 1 : 0;
                break;
            }
            case Method::radau: {
                StepStats stats;
                state.t = t;  // keep the grid exact rather than accumulating tau
                state = radau_step(state, force_model, surface, tableau, method.tau, method.newton, &stats);
                state.t = t_next;
                x = state.x;
                traj.stats.newton_iterations += stats.newton_iterations;
                traj.stats.max_newton_iterations = std::max(traj.stats.max_newton_iterations, stats.newton_iterations);
                break;
            }
            case Method::relax_static:
                break;
        }
        ++traj.stats.steps;
        record(n + 1, x);
    }
    traj.final_positions = x;
    return traj;
}

Trajectory relax_static(const TriMesh& mesh, const Positions& x0, const LevelSetSurface& surface,
                        const ForceConfig& forces, int steps, const RelaxSettings& settings, double t,
                        const StepObserver& observer) {
    if (steps < 0) throw ConfigError(fmt::format("relaxation step count must be >= 0, got {}", steps));
    forces.validate();
    Trajectory traj;
    Positions x = x0;
    auto record = [&](int n) {
        const double pseudo_t = n * settings.window;
        const auto q = mesh_quality(mesh, x);
        const double res = constraint_residual(surface, x, t);
        traj.times.push_back(pseudo_t);
        traj.quality.push_back(q);
        traj.constraint_residual.push_back(res);
        traj.stats.max_constraint_residual = std::max(traj.stats.max_constraint_residual, res);
        if (observer) observer(pseudo_t, x, q);
    };
    record(0);
    for (int n = 0; n < steps; ++n) {
        x = w_relax_step(mesh, x, t, surface, forces, settings);
        ++traj.stats.steps;
        ++traj.stats.relaxations;
        record(n + 1);
    }
    traj.snapshots.push_back({static_cast<double>(steps) * settings.window, x});
    traj.final_positions = x;
    return traj;
}

}  // namespace alemesh

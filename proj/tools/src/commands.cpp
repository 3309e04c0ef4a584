#include "alemesh_cli/commands.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <alemesh/errors.hpp>
#include <alemesh/evolve.hpp>
#include <alemesh/generators.hpp>
#include <alemesh/io.hpp>

namespace fs = std::filesystem;

namespace alemesh::cli {
namespace {

int parse_count(const std::string& text, const std::string& source) {
    try {
        std::size_t used = 0;
        const int value = std::stoi(text, &used);
        if (used == text.size()) return value;
    } catch (const std::exception&) {
    }
    throw ConfigError(fmt::format("mesh source '{}': '{}' is not an integer", source, text));
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        parts.push_back(s.substr(start, pos - start));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return parts;
}

/// R and r of a `torus:R:r` surface name.
std::pair<double, double> torus_radii(const std::string& surface_name, const std::string& source) {
    const auto parts = split(surface_name, ':');
    if (parts.size() != 3 || parts[0] != "torus") {
        throw ConfigError(fmt::format("mesh source '{}' needs surface.name = torus:R:r", source));
    }
    return {std::stod(parts[1]), std::stod(parts[2])};
}

TriMesh load_source(const RunConfig& run, const LevelSetSurface& surface) {
    const auto& src = run.init.source;
    const auto parts = split(src, ':');
    if (parts[0] == "icosphere" && parts.size() == 2) return generate_icosphere(parse_count(parts[1], src));
    if (parts[0] == "revolution" && parts.size() == 2) {
        return generate_revolution_mesh(surface, run.t0, parse_count(parts[1], src));
    }
    if (parts[0] == "torus_grid" && parts.size() == 3) {
        const auto [R, r] = torus_radii(run.surface_name, src);
        return generate_torus_mesh(parse_count(parts[1], src), parse_count(parts[2], src), R, r);
    }
    if (parts[0] == "torus_rings" && parts.size() == 2) {
        const auto [R, r] = torus_radii(run.surface_name, src);
        return generate_torus_rings(R, r, parse_count(parts[1], src));
    }
    if (!fs::exists(src)) throw ConfigError(fmt::format("mesh file not found: {}", src));
    return read_obj(fs::path(src));
}

std::ofstream open_output(const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError(fmt::format("cannot write {}", path.string()));
    return out;
}

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw ConfigError(fmt::format("cannot create output directory {}: {}", dir.string(), ec.message()));
}

std::string snapshot_name(double t) { return fmt::format("mesh_t{:.3f}.obj", t); }

struct Summary {
    std::vector<std::pair<std::string, std::string>> rows;

    template <typename T>
    void add(std::string key, const T& value) {
        rows.emplace_back(std::move(key), fmt::format("{}", value));
    }
    void add_quality(const QualityReport& q) {
        add("final_r", fmt::format("{:.6g}", q.r));
        add("final_alpha_min", fmt::format("{:.6g}", q.alpha_min));
        add("final_alpha_max", fmt::format("{:.6g}", q.alpha_max));
        add("final_skew_max", fmt::format("{:.6g}", q.skew_max));
        add("final_class", to_string(q.classify()));
    }
    void write(const fs::path& path) const {
        auto out = open_output(path);
        for (const auto& [k, v] : rows) fmt::print(out, "{}: {}\n", k, v);
    }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

/// Steps per unit of the coarsest grid, or 0 when tau does not divide it.
long grid_ratio(double coarse, double tau) {
    const double ratio = coarse / tau;
    const long n = std::lround(ratio);
    return n >= 1 && std::abs(ratio - static_cast<double>(n)) <= 1e-9 * ratio ? n : 0;
}

}  // namespace

PreparedMesh prepare_mesh(const RunConfig& run, const LevelSetSurface& surface) {
    TriMesh mesh = load_source(run, surface);
    Positions x = mesh.positions();
    if (!run.init.scale.isOnes()) {
        for (Index j = 0; j < static_cast<Index>(mesh.num_vertices()); ++j) {
            node(x, j) = node(x, j).cwiseProduct(run.init.scale);
        }
        mesh = mesh.with_positions(x);
    }
    if (run.init.perturb > 0.0) {
        mesh = perturb(mesh, run.init.perturb, run.init.seed);
        x = mesh.positions();
    }
    const ProjectionSettings tight{run.init.project_tol, std::max(100, run.method.projection.max_iter)};
    project_all(surface, x, run.t0, tight);
    if (run.init.prerelax_steps > 0) {
        ForceConfig forces = run.method.forces;
        forces.k_alpha = 0.0;
        const RelaxSettings settings{run.relax.substeps, run.relax.window, tight};
        x = relax_static(mesh, x, surface, forces, run.init.prerelax_steps, settings, run.t0).final_positions;
    }
    return {mesh.with_positions(x), x};
}

void cmd_init(const RunConfig& run, const fs::path& out, std::ostream& log) {
    ensure_dir(out);
    const auto surface = surface_from_name(run.surface_name);
    const auto prepared = prepare_mesh(run, surface);
    write_obj(out / "mesh.obj", prepared.mesh, prepared.x);
    const auto q = mesh_quality(prepared.mesh, prepared.x);
    fmt::print(log, "init: {} vertices, {} triangles on {} at t = {}; residual {:.3e}, skew_max {:.4f}\n",
               prepared.mesh.num_vertices(), prepared.mesh.num_triangles(), surface.name(), run.t0,
               constraint_residual(surface, prepared.x, run.t0), q.skew_max);
}

void cmd_evolve(const RunConfig& run, const fs::path& out, std::ostream& log) {
    ensure_dir(out);
    const auto surface = surface_from_name(run.surface_name);
    const auto prepared = prepare_mesh(run, surface);
    const auto& method = run.method;

    auto csv = open_output(out / "quality.csv");
    fmt::print(csv, "{}\n{}\n", kCsvSchemaVersion, kQualityCsvHeader);

    std::vector<long> snapshot_steps;
    for (double s : method.snapshot_times) snapshot_steps.push_back(std::lround((s - run.t0) / method.tau));

    Summary summary;
    summary.add("command", "evolve");
    summary.add("surface", surface.name());
    summary.add("method", to_string(method.tag));
    summary.add("vertices", prepared.mesh.num_vertices());
    summary.add("t0", run.t0);
    summary.add("T", run.T);
    summary.add("tau", method.tau);

    int recorded = 0;
    QualityReport last{};
    auto observer = [&](double t, const Positions& x, const QualityReport& q) {
        fmt::print(csv, "{}\n", quality_csv_row(t, q));
        const long n = std::lround((t - run.t0) / method.tau);
        for (long s : snapshot_steps) {
            if (s == n) {
                write_obj(out / snapshot_name(t), prepared.mesh, x);
                break;
            }
        }
        last = q;
        ++recorded;
    };

    const auto start = std::chrono::steady_clock::now();
    try {
        const auto traj = evolve(prepared.mesh, prepared.x, surface, method, run.t0, run.T, observer);
        csv.flush();
        summary.add("status", "ok");
        summary.add("steps", traj.stats.steps);
        summary.add("wall_time_s", fmt::format("{:.3f}", seconds_since(start)));
        summary.add_quality(traj.quality.back());
        summary.add("max_constraint_residual", fmt::format("{:.3e}", traj.stats.max_constraint_residual));
        if (method.tag == Method::radau) {
            summary.add("stages", method.stages);
            summary.add("newton_iterations_total", traj.stats.newton_iterations);
            summary.add("newton_iterations_max", traj.stats.max_newton_iterations);
            summary.add("newton_iterations_mean",
                        fmt::format("{:.2f}", static_cast<double>(traj.stats.newton_iterations) /
                                                  std::max(1, traj.stats.steps)));
        }
        if (method.tag == Method::splitting || method.tag == Method::splitting_adaptive) {
            summary.add("substeps", method.substeps);
            summary.add("relaxations", traj.stats.relaxations);
        }
        summary.write(out / "summary.txt");
        fmt::print(log, "evolve: {} on {} over [{}, {}], {} steps in {:.2f}s; final skew_max {:.4f} ({})\n",
                   to_string(method.tag), surface.name(), run.t0, run.T, traj.stats.steps, seconds_since(start),
                   traj.quality.back().skew_max, to_string(traj.quality.back().classify()));
    } catch (const Error& e) {
        csv.flush();
        summary.add("status", fmt::format("failed: {}", e.what()));
        summary.add("completed_steps", std::max(0, recorded - 1));
        summary.add("wall_time_s", fmt::format("{:.3f}", seconds_since(start)));
        if (recorded > 0) summary.add_quality(last);
        summary.write(out / "summary.txt");
        throw;
    }
}

void cmd_relax(const RunConfig& run, const fs::path& out, std::ostream& log) {
    ensure_dir(out);
    const auto surface = surface_from_name(run.surface_name);
    const auto prepared = prepare_mesh(run, surface);

    auto angles = open_output(out / "angles.csv");
    fmt::print(angles, "# alemesh angles csv v1\nstep,alpha_max\n");
    auto csv = open_output(out / "quality.csv");
    fmt::print(csv, "{}\n{}\n", kCsvSchemaVersion, kQualityCsvHeader);

    int step = 0;
    auto observer = [&](double pseudo_t, const Positions&, const QualityReport& q) {
        fmt::print(angles, "{},{:.17g}\n", step++, q.alpha_max);
        fmt::print(csv, "{}\n", quality_csv_row(pseudo_t, q));
    };
    const RelaxSettings settings{run.relax.substeps, run.relax.window, run.method.projection};
    const auto start = std::chrono::steady_clock::now();
    const auto traj = relax_static(prepared.mesh, prepared.x, surface, run.method.forces, run.relax.steps, settings,
                                   run.t0, observer);
    write_obj(out / "mesh_final.obj", prepared.mesh, traj.final_positions);

    Summary summary;
    summary.add("command", "relax");
    summary.add("surface", surface.name());
    summary.add("vertices", prepared.mesh.num_vertices());
    summary.add("steps", run.relax.steps);
    summary.add("window", run.relax.window);
    summary.add("substeps", run.relax.substeps);
    summary.add("status", "ok");
    summary.add("wall_time_s", fmt::format("{:.3f}", seconds_since(start)));
    summary.add("initial_alpha_max", fmt::format("{:.6g}", traj.quality.front().alpha_max));
    summary.add_quality(traj.quality.back());
    summary.add("max_constraint_residual", fmt::format("{:.3e}", traj.stats.max_constraint_residual));
    summary.write(out / "summary.txt");
    fmt::print(log, "relax: {} steps on {}; alpha_max {:.2f} -> {:.2f}\n", run.relax.steps, surface.name(),
               traj.quality.front().alpha_max, traj.quality.back().alpha_max);
}

void cmd_compare(const std::vector<RunConfig>& runs, const fs::path& out, std::ostream& log) {
    if (runs.size() < 2) throw ConfigError("compare: need at least two runs");
    const auto& first = runs.front();
    double coarse = 0.0;
    for (const auto& run : runs) {
        if (run.surface_name != first.surface_name) {
            throw ConfigError(fmt::format("compare: runs use different surfaces ('{}' vs '{}')", first.surface_name,
                                          run.surface_name));
        }
        if (run.t0 != first.t0 || run.T != first.T) throw ConfigError("compare: mismatched time grids (t0 or T differ)");
        coarse = std::max(coarse, run.method.tau);
    }
    for (const auto& run : runs) {
        if (grid_ratio(coarse, run.method.tau) == 0) {
            throw ConfigError(fmt::format("compare: mismatched time grids (tau {} does not divide {})",
                                          run.method.tau, coarse));
        }
    }

    std::vector<std::string> labels;
    std::map<std::string, int> seen;
    for (const auto& run : runs) {
        std::string label(to_string(run.method.tag));
        if (const int n = seen[label]++; n > 0) label += fmt::format("_{}", n + 1);
        labels.push_back(label);
    }

    ensure_dir(out);
    std::vector<std::vector<std::string>> columns;
    std::vector<double> times;
    for (std::size_t i = 0; i < runs.size(); ++i) {
        cmd_evolve(runs[i], out / labels[i], log);
        // Re-read the streamed series; it is the single source of the run's numbers.
        std::ifstream in(out / labels[i] / "quality.csv");
        std::string line;
        std::vector<std::string> rows;
        std::vector<double> ts;
        const long stride = grid_ratio(coarse, runs[i].method.tau);
        long index = 0;
        while (std::getline(in, line)) {
            if (line.empty() || line.front() == '#' || line.front() == 't') continue;
            if (index++ % stride != 0) continue;
            const auto comma = line.find(',');
            ts.push_back(std::stod(line.substr(0, comma)));
            rows.push_back(line.substr(comma + 1));
        }
        if (i == 0) times = ts;
        if (ts.size() != times.size()) throw ConfigError("compare: runs produced different numbers of grid points");
        columns.push_back(std::move(rows));
    }

    auto csv = open_output(out / "compare.csv");
    fmt::print(csv, "# alemesh compare csv v1\nt");
    for (const auto& label : labels) {
        for (const char* measure : {"r", "alpha_min", "alpha_max", "skew_max"}) fmt::print(csv, ",{}.{}", label, measure);
    }
    fmt::print(csv, "\n");
    for (std::size_t row = 0; row < times.size(); ++row) {
        fmt::print(csv, "{:.10g}", times[row]);
        for (const auto& col : columns) fmt::print(csv, ",{}", col[row]);
        fmt::print(csv, "\n");
    }
    fmt::print(log, "compare: {} runs merged into {}\n", runs.size(), (out / "compare.csv").string());
}

}  // namespace alemesh::cli

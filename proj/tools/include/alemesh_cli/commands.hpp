#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <alemesh/mesh.hpp>
#include <alemesh/surface.hpp>

#include "alemesh_cli/config.hpp"

namespace alemesh::cli {

/// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

struct PreparedMesh {
    TriMesh mesh;
    Positions x;
};

/// Loads or generates the mesh named by run.init.source, applies scale and
/// jitter, projects every node onto the surface at t0 and runs the optional
/// pre-relaxation (angle force off).
PreparedMesh prepare_mesh(const RunConfig& run, const LevelSetSurface& surface);

/// Writes `mesh.obj`.
void cmd_init(const RunConfig& run, const std::filesystem::path& out, std::ostream& log);

/// Writes `quality.csv` (streamed, so failed runs keep their completed rows),
/// `mesh_t<time>.obj` per snapshot and `summary.txt`. Failures are rethrown
/// after the summary has recorded them.
void cmd_evolve(const RunConfig& run, const std::filesystem::path& out, std::ostream& log);

/// Stationary relaxation at run.t0: `angles.csv`, `quality.csv` over pseudo-time,
/// `mesh_final.obj` and `summary.txt`.
void cmd_relax(const RunConfig& run, const std::filesystem::path& out, std::ostream& log);

/// Runs each member into `<out>/<label>/` and merges the quality series into
/// `<out>/compare.csv` on the coarsest common time grid. Members must share the
/// surface, start and end time, and each time step must divide the coarsest.
void cmd_compare(const std::vector<RunConfig>& runs, const std::filesystem::path& out, std::ostream& log);

}  // namespace alemesh::cli

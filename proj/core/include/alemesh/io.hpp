#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "alemesh/mesh.hpp"
#include "alemesh/quality.hpp"

namespace alemesh {

/// Reads `v` and `f` records of an ASCII Wavefront OBJ file (1-based indices,
/// `f a/b/c` style tokens accepted). Faces must be triangles. Other records are ignored.
TriMesh read_obj(std::istream& in);
TriMesh read_obj(const std::filesystem::path& path);

/// Writes `v` records with 17 significant digits followed by `f` records.
void write_obj(std::ostream& out, const TriMesh& mesh);
void write_obj(std::ostream& out, const TriMesh& mesh, const Positions& x);
void write_obj(const std::filesystem::path& path, const TriMesh& mesh, const Positions& x);

inline constexpr const char* kQualityCsvHeader = "t,r,alpha_min,alpha_max,skew_max";
inline constexpr const char* kCsvSchemaVersion = "# alemesh quality csv v1";

/// One `t,r,alpha_min,alpha_max,skew_max` row, no trailing newline.
std::string quality_csv_row(double t, const QualityReport& q);

}  // namespace alemesh

#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "alemesh/errors.hpp"
#include "alemesh/io.hpp"

namespace alemesh {
namespace {

Index parse_face_index(const std::string& token, std::size_t line_no, std::size_t num_vertices) {
    const auto slash = token.find('/');
    const std::string head = token.substr(0, slash);
    long value = 0;
    try {
        std::size_t used = 0;
        value = std::stol(head, &used);
        if (used != head.size()) throw std::invalid_argument(head);
    } catch (const std::exception&) {
        throw ConfigError(fmt::format("OBJ line {}: bad face index '{}'", line_no, token));
    }
    if (value < 1 || static_cast<std::size_t>(value) > num_vertices) {
        throw ConfigError(fmt::format("OBJ line {}: face index {} out of range 1..{}", line_no, value, num_vertices));
    }
    return static_cast<Index>(value - 1);
}

}  // namespace

TriMesh read_obj(std::istream& in) {
    std::vector<Vec3> verts;
    std::vector<std::vector<std::string>> faces;
    std::vector<std::size_t> face_lines;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) continue;
        if (tag == "v") {
            Vec3 p;
            if (!(ls >> p.x() >> p.y() >> p.z())) {
                throw ConfigError(fmt::format("OBJ line {}: malformed vertex", line_no));
            }
            verts.push_back(p);
        } else if (tag == "f") {
            std::vector<std::string> tokens;
            std::string tok;
            while (ls >> tok) tokens.push_back(tok);
            if (tokens.size() != 3) {
                throw ConfigError(fmt::format("OBJ line {}: only triangular faces are supported", line_no));
            }
            faces.push_back(std::move(tokens));
            face_lines.push_back(line_no);
        }
    }
    std::vector<Triangle> tris;
    tris.reserve(faces.size());
    for (std::size_t f = 0; f < faces.size(); ++f) {
        Triangle t{};
        for (int k = 0; k < 3; ++k) {
            t[k] = parse_face_index(faces[f][k], face_lines[f], verts.size());
        }
        tris.push_back(t);
    }
    return TriMesh::build(std::move(verts), std::move(tris));
}

TriMesh read_obj(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError(fmt::format("file not found: {}", path.string()));
    }
    return read_obj(in);
}

void write_obj(std::ostream& out, const TriMesh& mesh) { write_obj(out, mesh, mesh.positions()); }

void write_obj(std::ostream& out, const TriMesh& mesh, const Positions& x) {
    for (std::size_t j = 0; j < mesh.num_vertices(); ++j) {
        const auto p = node(x, static_cast<Index>(j));
        out << fmt::format("v {:.17g} {:.17g} {:.17g}\n", p.x(), p.y(), p.z());
    }
    for (const auto& t : mesh.triangles()) {
        out << fmt::format("f {} {} {}\n", t[0] + 1, t[1] + 1, t[2] + 1);
    }
}

void write_obj(const std::filesystem::path& path, const TriMesh& mesh, const Positions& x) {
    std::ofstream out(path);
    if (!out) {
        throw Error(fmt::format("cannot open {} for writing", path.string()));
    }
    write_obj(out, mesh, x);
}

std::string quality_csv_row(double t, const QualityReport& q) {
    return fmt::format("{:.10g},{:.17g},{:.17g},{:.17g},{:.17g}", t, q.r, q.alpha_min, q.alpha_max, q.skew_max);
}

}  // namespace alemesh

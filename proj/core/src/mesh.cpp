#include "alemesh/mesh.hpp"

#include <algorithm>
#include <map>

#include <fmt/format.h>

#include "alemesh/errors.hpp"

namespace alemesh {

TriMesh TriMesh::build(std::vector<Vec3> vertices, std::vector<Triangle> triangles) {
    const auto n = vertices.size();
    if (triangles.empty()) {
        throw MeshError("mesh has no triangles");
    }

    std::map<std::pair<Index, Index>, int> edge_count;
    // Net orientation per undirected edge: +1 for a->b with a < b, -1 otherwise.
    std::map<std::pair<Index, Index>, int> edge_winding;
    for (std::size_t t = 0; t < triangles.size(); ++t) {
        const auto& tri = triangles[t];
        for (Index v : tri) {
            if (v >= n) {
                throw MeshError(fmt::format("triangle {} references vertex {} but mesh has {} vertices", t, v, n));
            }
        }
        if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2]) {
            throw MeshError(fmt::format("triangle {} has a repeated vertex", t));
        }
        for (int k = 0; k < 3; ++k) {
            Index a = tri[k];
            Index b = tri[(k + 1) % 3];
            ++edge_count[{std::min(a, b), std::max(a, b)}];
            edge_winding[{std::min(a, b), std::max(a, b)}] += a < b ? 1 : -1;
        }
    }

    TriMesh mesh;
    mesh.edges_.reserve(edge_count.size());
    for (const auto& [key, count] : edge_count) {
        if (count != 2) {
            throw MeshError(fmt::format("not a closed surface: edge ({}, {}) is shared by {} triangle(s)",
                                        key.first, key.second, count));
        }
        if (edge_winding[key] != 0) {
            throw MeshError(fmt::format("inconsistent orientation across edge ({}, {})", key.first, key.second));
        }
        mesh.edges_.push_back({key.first, key.second});
    }

    // CSR incidence list; edges are visited in sorted order so each vertex list
    // comes out ascending.
    std::vector<Index> degree(n, 0);
    for (const auto& e : mesh.edges_) {
        ++degree[e.a];
        ++degree[e.b];
    }
    mesh.vertex_edge_offsets_.assign(n + 1, 0);
    for (std::size_t v = 0; v < n; ++v) {
        mesh.vertex_edge_offsets_[v + 1] = mesh.vertex_edge_offsets_[v] + degree[v];
    }
    mesh.vertex_edge_list_.resize(mesh.vertex_edge_offsets_[n]);
    std::vector<Index> fill(mesh.vertex_edge_offsets_.begin(), mesh.vertex_edge_offsets_.end() - 1);
    for (std::size_t i = 0; i < mesh.edges_.size(); ++i) {
        const auto& e = mesh.edges_[i];
        mesh.vertex_edge_list_[fill[e.a]++] = static_cast<Index>(i);
        mesh.vertex_edge_list_[fill[e.b]++] = static_cast<Index>(i);
    }

    mesh.vertices_ = std::move(vertices);
    mesh.triangles_ = std::move(triangles);
    return mesh;
}

std::span<const Index> TriMesh::vertex_edges(Index v) const noexcept {
    return {vertex_edge_list_.data() + vertex_edge_offsets_[v],
            vertex_edge_list_.data() + vertex_edge_offsets_[v + 1]};
}

long TriMesh::euler_characteristic() const noexcept {
    return static_cast<long>(num_vertices()) - static_cast<long>(num_edges()) +
           static_cast<long>(num_triangles());
}

Positions TriMesh::positions() const { return stack(vertices_); }

TriMesh TriMesh::with_positions(const Positions& x) const {
    if (static_cast<std::size_t>(x.size()) != 3 * num_vertices()) {
        throw MeshError(fmt::format("position vector has length {}, expected {}", x.size(), 3 * num_vertices()));
    }
    TriMesh copy = *this;
    for (std::size_t j = 0; j < copy.vertices_.size(); ++j) {
        copy.vertices_[j] = node(x, static_cast<Index>(j));
    }
    return copy;
}

Positions stack(std::span<const Vec3> points) {
    Positions x(3 * static_cast<Eigen::Index>(points.size()));
    for (std::size_t j = 0; j < points.size(); ++j) {
        node(x, static_cast<Index>(j)) = points[j];
    }
    return x;
}

}  // namespace alemesh

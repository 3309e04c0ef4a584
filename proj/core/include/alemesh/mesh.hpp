#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace alemesh {

using Vec3 = Eigen::Vector3d;
using Index = std::uint32_t;
using Triangle = std::array<Index, 3>;

/// Stacked node positions (x_0, y_0, z_0, x_1, ...), length 3N.
using Positions = Eigen::VectorXd;

/// Unordered vertex pair stored with a < b.
struct Edge {
    Index a;
    Index b;

    Index other(Index v) const noexcept { return v == a ? b : a; }
    friend bool operator==(const Edge&, const Edge&) = default;
};

inline auto node(Positions& x, Index j) { return x.segment<3>(3 * static_cast<Eigen::Index>(j)); }
inline auto node(const Positions& x, Index j) { return x.segment<3>(3 * static_cast<Eigen::Index>(j)); }

/// Closed, orientable triangle surface with derived edge connectivity.
///
/// Immutable after construction. Edges are sorted by (min index, max index)
/// so every iteration over them is reproducible.
class TriMesh {
public:
    /// Validates indices, rejects degenerate triangles and checks that every
    /// edge is shared by exactly two triangles. Throws MeshError otherwise.
    static TriMesh build(std::vector<Vec3> vertices, std::vector<Triangle> triangles);

    std::size_t num_vertices() const noexcept { return vertices_.size(); }
    std::size_t num_triangles() const noexcept { return triangles_.size(); }
    std::size_t num_edges() const noexcept { return edges_.size(); }

    const std::vector<Vec3>& vertices() const noexcept { return vertices_; }
    const std::vector<Triangle>& triangles() const noexcept { return triangles_; }
    const std::vector<Edge>& edges() const noexcept { return edges_; }

    /// Indices into edges() of the edges incident to vertex v, ascending.
    std::span<const Index> vertex_edges(Index v) const noexcept;

    /// Euler characteristic V - E + F.
    long euler_characteristic() const noexcept;

    Positions positions() const;

    /// Same connectivity, new vertex coordinates.
    TriMesh with_positions(const Positions& x) const;

private:
    TriMesh() = default;

    std::vector<Vec3> vertices_;
    std::vector<Triangle> triangles_;
    std::vector<Edge> edges_;
    std::vector<Index> vertex_edge_offsets_;
    std::vector<Index> vertex_edge_list_;
};

Positions stack(std::span<const Vec3> points);

}  // namespace alemesh

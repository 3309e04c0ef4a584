#pragma once

#include <cstdint>

#include "alemesh/mesh.hpp"
#include "alemesh/surface.hpp"

namespace alemesh {

inline constexpr int kMaxIcosphereSubdivisions = 8;

/// Subdivided icosahedron on the unit sphere: 20 * 4^subdivisions triangles.
/// Accepts 0..kMaxIcosphereSubdivisions.
TriMesh generate_icosphere(int subdivisions);

/// Structured torus grid around the z axis, 2 * n_u * n_v triangles.
/// n_u counts samples around the major circle (radius R), n_v around the tube (radius r).
TriMesh generate_torus_mesh(int n_u, int n_v, double R, double r);

/// Moves every vertex by a uniform random offset in [-amplitude, amplitude]^3.
/// Deterministic for a given seed.
TriMesh perturb(const TriMesh& mesh, double amplitude, std::uint64_t seed);

/// Ring-by-ring mesh of a level set that is rotationally symmetric about the z
/// axis and star-shaped along it (origin inside, one crossing per ring and on
/// each half axis). Spacing is chosen so the result has roughly
/// `target_vertices` nodes with near-equilateral triangles; neighbouring rings
/// get as many nodes as their circumference needs.
TriMesh generate_revolution_mesh(const LevelSetSurface& surface, double t, int target_vertices);

/// Torus around the z axis built from staggered rings around the tube, each
/// ring holding as many nodes as its circumference needs. Nearly equilateral,
/// unlike generate_torus_mesh whose cells stretch on the outer side.
TriMesh generate_torus_rings(double R, double r, int target_vertices);

}  // namespace alemesh

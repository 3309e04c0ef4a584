#pragma once

#include <array>
#include <string_view>

#include "alemesh/mesh.hpp"

namespace alemesh {

/// Skewness thresholds for the good / non-acceptable mesh classification.
inline constexpr double kGoodSkewness = 0.5;
inline constexpr double kNonAcceptableSkewness = 0.8;

struct TriangleMetrics {
    std::array<double, 3> angles;  ///< degrees, angle i sits at vertex i
    double h;                      ///< longest edge
    double sigma;                  ///< inradius
    double skew;                   ///< equiangular skewness in [0, 1]
};

/// Angles via atan2(|cross|, dot); inradius 2*Area/perimeter.
/// Throws DegenerateElementError when Area < 1e-14 * h^2.
TriangleMetrics triangle_metrics(const Vec3& a, const Vec3& b, const Vec3& c);

/// Equiangular skewness of a triangle with the given angles (degrees).
double skewness(double min_angle_deg, double max_angle_deg) noexcept;

enum class MeshClass { good, fair, non_acceptable };

std::string_view to_string(MeshClass c) noexcept;

struct QualityReport {
    double r = 0.0;          ///< max over elements of h_E / sigma_E
    double alpha_min = 0.0;  ///< degrees
    double alpha_max = 0.0;  ///< degrees
    double skew_max = 0.0;

    MeshClass classify() const noexcept;
};

/// Mesh-wide extrema of triangle_metrics over all elements of the mesh.
QualityReport mesh_quality(const TriMesh& mesh);

/// Same, evaluated at an alternative set of node positions.
QualityReport mesh_quality(const TriMesh& mesh, const Positions& x);

}  // namespace alemesh

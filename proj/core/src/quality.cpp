#include "alemesh/quality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>

#include "alemesh/errors.hpp"

namespace alemesh {
namespace {

constexpr double kRadToDeg = 180.0 / std::numbers::pi;
constexpr double kDegenerateRatio = 1e-14;

double corner_angle(const Vec3& u, const Vec3& v) {
    return std::atan2(u.cross(v).norm(), u.dot(v)) * kRadToDeg;
}

}  // namespace

double skewness(double min_angle_deg, double max_angle_deg) noexcept {
    return std::max((max_angle_deg - 60.0) / 120.0, (60.0 - min_angle_deg) / 60.0);
}

TriangleMetrics triangle_metrics(const Vec3& a, const Vec3& b, const Vec3& c) {
    const Vec3 ab = b - a;
    const Vec3 bc = c - b;
    const Vec3 ca = a - c;
    const double lab = ab.norm();
    const double lbc = bc.norm();
    const double lca = ca.norm();
    const double h = std::max({lab, lbc, lca});
    const double area = 0.5 * ab.cross(-ca).norm();
    if (!(area >= kDegenerateRatio * h * h) || h == 0.0) {
        throw DegenerateElementError(std::numeric_limits<std::size_t>::max(),
                                     fmt::format("degenerate triangle: area {:.3e}, longest edge {:.3e}", area, h));
    }

    TriangleMetrics m;
    m.angles = {corner_angle(ab, -ca), corner_angle(bc, -ab), corner_angle(ca, -bc)};
    m.h = h;
    m.sigma = 2.0 * area / (lab + lbc + lca);
    const auto [lo, hi] = std::minmax_element(m.angles.begin(), m.angles.end());
    m.skew = std::clamp(skewness(*lo, *hi), 0.0, 1.0);
    return m;
}

std::string_view to_string(MeshClass c) noexcept {
    switch (c) {
        case MeshClass::good:
            return "good";
        case MeshClass::fair:
            return "fair";
        case MeshClass::non_acceptable:
            return "non-acceptable";
    }
    return "unknown";
}

MeshClass QualityReport::classify() const noexcept {
    if (skew_max > kNonAcceptableSkewness) return MeshClass::non_acceptable;
    if (skew_max < kGoodSkewness) return MeshClass::good;
    return MeshClass::fair;
}

QualityReport mesh_quality(const TriMesh& mesh) { return mesh_quality(mesh, mesh.positions()); }

QualityReport mesh_quality(const TriMesh& mesh, const Positions& x) {
    QualityReport q;
    q.alpha_min = std::numeric_limits<double>::infinity();
    q.alpha_max = -std::numeric_limits<double>::infinity();
    const auto& tris = mesh.triangles();
    for (std::size_t t = 0; t < tris.size(); ++t) {
        const auto& tri = tris[t];
        TriangleMetrics m;
        try {
            m = triangle_metrics(node(x, tri[0]), node(x, tri[1]), node(x, tri[2]));
        } catch (const DegenerateElementError& e) {
            throw DegenerateElementError(t, fmt::format("element {}: {}", t, e.what()));
        }
        q.r = std::max(q.r, m.h / m.sigma);
        q.skew_max = std::max(q.skew_max, m.skew);
        for (double a : m.angles) {
            q.alpha_min = std::min(q.alpha_min, a);
            q.alpha_max = std::max(q.alpha_max, a);
        }
    }
    return q;
}

}  // namespace alemesh

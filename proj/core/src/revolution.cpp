#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "alemesh/errors.hpp"
#include "alemesh/generators.hpp"

namespace alemesh {
namespace {

constexpr double kPi = std::numbers::pi;

/// Root of f on [lo, hi] given f(lo) < 0 < f(hi).
template <typename F>
double bisect(F&& f, double lo, double hi) {
    for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi)); ++it) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

/// First sign change of f from negative to positive when stepping outward from 0.
template <typename F>
double march_out(F&& f, double step, double limit, const char* what) {
    if (!(f(0.0) < 0.0)) throw ConfigError(fmt::format("revolution mesh: origin is not inside the surface ({})", what));
    double prev = 0.0;
    for (double r = step; r <= limit; r += step) {
        if (f(r) > 0.0) return bisect(f, prev, r);
        prev = r;
    }
    throw ConfigError(fmt::format("revolution mesh: no surface crossing found along {}", what));
}


struct RingPoint {
    double rho;
    double z;
};

/// Connects ring `lo` to ring `hi` (both counter-clockwise seen from +z, `hi`
/// further along the profile) with a strip of triangles, always advancing the
/// ring whose next node comes first in angle.
void zip_rings(const std::vector<Index>& lo, double phase_lo, const std::vector<Index>& hi, double phase_hi,
               std::vector<Triangle>& tris) {
    const auto nl = lo.size();
    const auto nh = hi.size();
    auto angle = [](std::size_t i, std::size_t n, double phase) { return (static_cast<double>(i) + phase) / n; };
    // Start from the upper node closest in angle to lower node 0.
    std::size_t j0 = 0;
    double best = 2.0;
    for (std::size_t c = 0; c < nh; ++c) {
        double gap = std::abs(angle(c, nh, phase_hi) - angle(0, nl, phase_lo));
        gap = std::min(gap, 1.0 - gap);
        if (gap < best) {
            best = gap;
            j0 = c;
        }
    }
    double base_hi = angle(j0, nh, phase_hi) - angle(0, nl, phase_lo);
    if (base_hi > 0.5) base_hi -= 1.0;
    if (base_hi < -0.5) base_hi += 1.0;
    std::size_t i = 0, j = 0;
    while (i < nl || j < nh) {
        const double next_lo = (static_cast<double>(i) + 1.0) / nl;
        const double next_hi = base_hi + (static_cast<double>(j) + 1.0) / nh;
        const Index a = lo[i % nl];
        const Index b = hi[(j0 + j) % nh];
        if (j >= nh || (i < nl && next_lo <= next_hi)) {
            tris.push_back({a, lo[(i + 1) % nl], b});
            ++i;
        } else {
            tris.push_back({a, hi[(j0 + j + 1) % nh], b});
            ++j;
        }
    }
}

/// Rings of nodes at the given profile points, spaced about h apart along each
/// ring. With `closed` the last ring connects back to the first (torus);
/// otherwise the profile runs from the bottom pole to the top pole, which are
/// added as single nodes.
TriMesh ring_mesh(const std::vector<RingPoint>& profile, double h, bool closed, RingPoint bottom, RingPoint top) {
    std::vector<Vec3> verts;
    std::vector<std::vector<Index>> rings;
    std::vector<double> phases;
    if (!closed) verts.emplace_back(0.0, 0.0, bottom.z);
    for (std::size_t k = 0; k < profile.size(); ++k) {
        const auto [rho, z] = profile[k];
        const int count = std::max(3, static_cast<int>(std::lround(2.0 * kPi * rho / h)));
        const double phase = 0.5 * static_cast<double>(k % 2);
        std::vector<Index> ring;
        for (int i = 0; i < count; ++i) {
            const double phi = 2.0 * kPi * (i + phase) / count;
            ring.push_back(static_cast<Index>(verts.size()));
            verts.emplace_back(rho * std::cos(phi), rho * std::sin(phi), z);
        }
        rings.push_back(std::move(ring));
        phases.push_back(phase);
    }

    // Angles run counter-clockwise seen from +z and the profile is traversed so
    // that (lower_i, lower_i+1, upper_j) has its normal pointing outward.
    std::vector<Triangle> tris;
    if (!closed) {
        const auto& first = rings.front();
        for (std::size_t i = 0; i < first.size(); ++i) tris.push_back({0, first[(i + 1) % first.size()], first[i]});
    }
    for (std::size_t k = 0; k + 1 < rings.size(); ++k) zip_rings(rings[k], phases[k], rings[k + 1], phases[k + 1], tris);
    if (closed) {
        zip_rings(rings.back(), phases.back(), rings.front(), phases.front(), tris);
    } else {
        const auto topi = static_cast<Index>(verts.size());
        verts.emplace_back(0.0, 0.0, top.z);
        const auto& last = rings.back();
        for (std::size_t i = 0; i < last.size(); ++i) tris.push_back({topi, last[i], last[(i + 1) % last.size()]});
    }
    return TriMesh::build(std::move(verts), std::move(tris));
}

}  // namespace

TriMesh generate_revolution_mesh(const LevelSetSurface& surface, double t, int target_vertices) {
    if (target_vertices < 8) {
        throw ConfigError(fmt::format("revolution mesh needs at least 8 vertices, got {}", target_vertices));
    }
    auto d_at = [&](double rho, double z) { return surface.d(Vec3(rho, 0.0, z), t); };
    const double probe = 1e-3;
    const double z_top = march_out([&](double z) { return d_at(0.0, z); }, probe, 1e3, "+z axis");
    const double z_bot = -march_out([&](double z) { return d_at(0.0, -z); }, probe, 1e3, "-z axis");

    // Dense profile polyline (rho(z), z) with cosine clustering towards the poles,
    // where the profile turns vertical.
    const int samples = 4000;
    std::vector<double> zs(samples + 1), rhos(samples + 1), arc(samples + 1, 0.0);
    for (int i = 0; i <= samples; ++i) {
        const double u = 0.5 * (1.0 - std::cos(kPi * i / samples));
        zs[i] = z_bot + u * (z_top - z_bot);
        rhos[i] = (i == 0 || i == samples) ? 0.0
                                           : march_out([&](double r) { return d_at(r, zs[i]); }, probe, 1e3, "radius");
    }
    double area = 0.0;
    for (int i = 1; i <= samples; ++i) {
        const double ds = std::hypot(rhos[i] - rhos[i - 1], zs[i] - zs[i - 1]);
        arc[i] = arc[i - 1] + ds;
        area += 2.0 * kPi * 0.5 * (rhos[i] + rhos[i - 1]) * ds;
    }
    const double length = arc.back();

    // Equilateral triangles of side h cover sqrt(3)/2 h^2 per vertex.
    const double h = std::sqrt(area / (target_vertices * std::sqrt(3.0) / 2.0));
    const int rows = std::max(2, static_cast<int>(std::lround(length / (h * std::sqrt(3.0) / 2.0))));

    auto profile_at = [&](double s) {
        const auto it = std::lower_bound(arc.begin(), arc.end(), s);
        const auto i = std::clamp<std::ptrdiff_t>(it - arc.begin(), 1, samples);
        const double w = (s - arc[i - 1]) / std::max(arc[i] - arc[i - 1], 1e-300);
        return std::pair{rhos[i - 1] + w * (rhos[i] - rhos[i - 1]), zs[i - 1] + w * (zs[i] - zs[i - 1])};
    };

    std::vector<RingPoint> profile;
    for (int k = 1; k < rows; ++k) {
        // The polyline chord sits slightly inside the profile; pull back onto d = 0.
        const auto [rho, z] = profile_at(length * k / rows);
        const Vec3 p = project(surface, Vec3(rho, 0.0, z), t, {1e-14, 100});
        profile.push_back({p.x(), p.z()});
    }
    return ring_mesh(profile, h, false, {0.0, z_bot}, {0.0, z_top});
}

TriMesh generate_torus_rings(double R, double r, int target_vertices) {
    if (!(R > r && r > 0.0)) throw ConfigError(fmt::format("torus needs R > r > 0, got R = {}, r = {}", R, r));
    if (target_vertices < 9) {
        throw ConfigError(fmt::format("torus ring mesh needs at least 9 vertices, got {}", target_vertices));
    }
    const double area = 4.0 * kPi * kPi * R * r;
    const double h = std::sqrt(area / (target_vertices * std::sqrt(3.0) / 2.0));
    // Even ring count keeps the alternating half-spacing phase consistent across the seam.
    int rows = std::max(3, static_cast<int>(std::lround(2.0 * kPi * r / (h * std::sqrt(3.0) / 2.0))));
    rows += rows % 2;
    // Tube angle runs so that the outer equator is traversed upward: the outward
    // side of each strip then faces away from the tube centre.
    std::vector<RingPoint> profile;
    for (int k = 0; k < rows; ++k) {
        const double theta = 2.0 * kPi * k / rows;
        profile.push_back({R + r * std::cos(theta), r * std::sin(theta)});
    }
    return ring_mesh(profile, h, true, {}, {});
}

}  // namespace alemesh

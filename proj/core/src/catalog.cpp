#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

#include <fmt/format.h>

#include "alemesh/errors.hpp"
#include "alemesh/surface.hpp"

namespace alemesh {

namespace {
constexpr double kPi = std::numbers::pi;
}

namespace dumbbell {
double G(double s) { return 200.0 * s * (s - 199.0 / 200.0); }
double dG(double s) { return 400.0 * s - 199.0; }
double K(double t) { return 0.1 + 0.05 * std::sin(2.0 * kPi * t); }
double dK(double t) { return 0.1 * kPi * std::cos(2.0 * kPi * t); }
double L(double t) { return 1.0 + 0.2 * std::sin(4.0 * kPi * t); }
double dL(double t) { return 0.8 * kPi * std::cos(4.0 * kPi * t); }
}  // namespace dumbbell

namespace four_hole {
double G(double s) { return 31.25 * s * (s - 0.36) * (s - 0.95); }
double dG(double s) { return 31.25 * (3.0 * s * s - 2.62 * s + 0.342); }
double K(double t) { return 0.1 + 0.01 * std::sin(2.0 * kPi * t); }
double dK(double t) { return 0.02 * kPi * std::cos(2.0 * kPi * t); }
double L(double t) { return 1.0 + 0.3 * std::sin(4.0 * kPi * t); }
double dL(double t) { return 1.2 * kPi * std::cos(4.0 * kPi * t); }
}  // namespace four_hole

LevelSetSurface make_dumbbell() {
    using namespace dumbbell;
    auto d = [](const Vec3& x, double t) {
        const double k = K(t);
        const double l = L(t);
        return x.x() * x.x() + x.y() * x.y() + k * k * G(x.z() * x.z() / (l * l)) - k * k;
    };
    auto grad = [](const Vec3& x, double t) {
        const double k = K(t);
        const double l = L(t);
        const double s = x.z() * x.z() / (l * l);
        return Vec3(2.0 * x.x(), 2.0 * x.y(), k * k * dG(s) * 2.0 * x.z() / (l * l));
    };
    auto dt = [](const Vec3& x, double t) {
        const double k = K(t);
        const double l = L(t);
        const double s = x.z() * x.z() / (l * l);
        const double ds_dt = -2.0 * s * dL(t) / l;
        return 2.0 * k * dK(t) * (G(s) - 1.0) + k * k * dG(s) * ds_dt;
    };
    LevelSetSurface surface("dumbbell", d, grad, dt);
    surface.set_interval(0.0, 0.6).set_literature_map(LiteratureMap::dumbbell);
    return surface;
}

LevelSetSurface make_four_hole() {
    using namespace four_hole;
    auto d = [](const Vec3& x, double t) {
        const double k = K(t);
        const double l = L(t);
        return x.x() * x.x() / (k * k) + G(x.y() * x.y()) + k * k * G(x.z() * x.z() / (l * l)) - 1.0;
    };
    auto grad = [](const Vec3& x, double t) {
        const double k = K(t);
        const double l = L(t);
        const double s = x.z() * x.z() / (l * l);
        return Vec3(2.0 * x.x() / (k * k), dG(x.y() * x.y()) * 2.0 * x.y(), k * k * dG(s) * 2.0 * x.z() / (l * l));
    };
    auto dt = [](const Vec3& x, double t) {
        const double k = K(t);
        const double l = L(t);
        const double s = x.z() * x.z() / (l * l);
        const double ds_dt = -2.0 * s * dL(t) / l;
        return -2.0 * x.x() * x.x() * dK(t) / (k * k * k) + 2.0 * k * dK(t) * G(s) + k * k * dG(s) * ds_dt;
    };
    LevelSetSurface surface("four_hole", d, grad, dt);
    surface.set_interval(0.0, 1.0).set_literature_map(LiteratureMap::four_hole);
    return surface;
}

LevelSetSurface make_torus(double R, double r) {
    if (!(r > 0.0 && r < R)) {
        throw ConfigError(fmt::format("torus radii must satisfy 0 < r < R, got R={} r={}", R, r));
    }
    auto d = [R, r](const Vec3& x, double) {
        const double rho = std::hypot(x.x(), x.y());
        return (rho - R) * (rho - R) + x.z() * x.z() - r * r;
    };
    auto grad = [R](const Vec3& x, double) {
        const double rho = std::hypot(x.x(), x.y());
        // rho = 0 lies on the axis, far inside the hole; the gradient there is
        // a removable singularity and is only reached by badly placed points.
        const double f = rho > 0.0 ? 2.0 * (rho - R) / rho : 0.0;
        return Vec3(f * x.x(), f * x.y(), 2.0 * x.z());
    };
    auto dt = [](const Vec3&, double) { return 0.0; };
    LevelSetSurface surface(fmt::format("torus:{}:{}", R, r), d, grad, dt);
    surface.set_static(true).set_interval(0.0, std::numeric_limits<double>::infinity());
    return surface;
}

LevelSetSurface make_sphere(double rho0_sq, double rate) {
    if (!(rho0_sq > 0.0)) {
        throw ConfigError(fmt::format("sphere needs rho0^2 > 0, got {}", rho0_sq));
    }
    auto d = [rho0_sq, rate](const Vec3& x, double t) { return x.squaredNorm() - (rho0_sq + rate * t); };
    auto grad = [](const Vec3& x, double) { return Vec3(2.0 * x); };
    auto dt = [rate](const Vec3&, double) { return -rate; };
    LevelSetSurface surface(fmt::format("sphere:{}:{}", rho0_sq, rate), d, grad, dt);
    // Regular while rho^2 > 0.
    const double t_end = rate < 0.0 ? -rho0_sq / rate : std::numeric_limits<double>::infinity();
    surface.set_static(rate == 0.0).set_interval(0.0, t_end);
    return surface;
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, sep)) parts.push_back(part);
    return parts;
}

double parse_number(const std::string& text, const std::string& context) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used == text.size()) return v;
    } catch (const std::exception&) {
    }
    throw ConfigError(fmt::format("surface '{}': '{}' is not a number", context, text));
}

}  // namespace

LevelSetSurface surface_from_name(const std::string& spec) {
    const auto parts = split(spec, ':');
    if (parts.empty()) throw ConfigError("empty surface name");
    const auto& name = parts[0];
    if (name == "dumbbell" && parts.size() == 1) return make_dumbbell();
    if (name == "four_hole" && parts.size() == 1) return make_four_hole();
    if (name == "torus" && parts.size() == 3) {
        return make_torus(parse_number(parts[1], spec), parse_number(parts[2], spec));
    }
    if (name == "sphere" && parts.size() == 1) return make_sphere();
    if (name == "sphere" && parts.size() == 3) {
        return make_sphere(parse_number(parts[1], spec), parse_number(parts[2], spec));
    }
    throw ConfigError(fmt::format("unknown surface '{}' (expected dumbbell, four_hole, torus:R:r, sphere[:rho0_sq:rate])",
                                  spec));
}

Vec3 literature_ale_map(LiteratureMap kind, const Vec3& x0, double t) { return literature_ale_map(kind, x0, 0.0, t); }

Vec3 literature_ale_map(LiteratureMap kind, const Vec3& x_from, double t_from, double t_to) {
    switch (kind) {
        case LiteratureMap::dumbbell: {
            const double kr = dumbbell::K(t_to) / dumbbell::K(t_from);
            const double lr = dumbbell::L(t_to) / dumbbell::L(t_from);
            return {x_from.x() * kr, x_from.y() * kr, x_from.z() * lr};
        }
        case LiteratureMap::four_hole: {
            const double kr = four_hole::K(t_to) / four_hole::K(t_from);
            const double lr = four_hole::L(t_to) / four_hole::L(t_from);
            return {x_from.x() * kr, x_from.y(), x_from.z() * lr};
        }
    }
    throw ConfigError("unknown literature map");
}

}  // namespace alemesh

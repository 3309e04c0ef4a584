#include "alemesh/surface.hpp"

#include <cmath>

#include <fmt/format.h>

#include "alemesh/errors.hpp"
#include "alemesh/parallel.hpp"

namespace alemesh {

LevelSetSurface::LevelSetSurface(std::string name, ScalarField d, VectorField grad_d, ScalarField dt_d)
    : name_(std::move(name)), d_(std::move(d)), grad_(std::move(grad_d)), dt_(std::move(dt_d)) {}

LevelSetSurface& LevelSetSurface::set_interval(double t_begin, double t_end) {
    t_begin_ = t_begin;
    t_end_ = t_end;
    return *this;
}

LevelSetSurface& LevelSetSurface::set_static(bool value) {
    static_ = value;
    return *this;
}

LevelSetSurface& LevelSetSurface::set_literature_map(LiteratureMap kind) {
    literature_ = kind;
    return *this;
}

Vec3 normal_velocity(const LevelSetSurface& surface, const Vec3& x, double t) {
    const Vec3 g = surface.grad_d(x, t);
    const double g2 = g.squaredNorm();
    if (!(std::sqrt(g2) > kGradientFloor)) {
        throw SingularSurfaceError(fmt::format("vanishing gradient of '{}' at ({}, {}, {}), t = {}", surface.name(),
                                               x.x(), x.y(), x.z(), t));
    }
    return (-surface.dt_d(x, t) / g2) * g;
}

Vec3 project(const LevelSetSurface& surface, const Vec3& x, double t, const ProjectionSettings& settings) {
    Vec3 p = x;
    double residual = std::abs(surface.d(p, t));
    for (int iter = 0; iter < settings.max_iter && residual > settings.tol; ++iter) {
        const Vec3 g = surface.grad_d(p, t);
        const double g2 = g.squaredNorm();
        if (!(std::sqrt(g2) > kGradientFloor)) {
            throw SingularSurfaceError(fmt::format("vanishing gradient of '{}' at ({}, {}, {}) during projection",
                                                   surface.name(), p.x(), p.y(), p.z()));
        }
        const Vec3 step = (surface.d(p, t) / g2) * g;
        double scale = 1.0;
        Vec3 trial = p - step;
        double trial_residual = std::abs(surface.d(trial, t));
        // Halve until |d| decreases; the cap keeps a stalled iteration from looping.
        for (int halvings = 0; !(trial_residual < residual) && halvings < 30; ++halvings) {
            scale *= 0.5;
            trial = p - scale * step;
            trial_residual = std::abs(surface.d(trial, t));
        }
        if (!(trial_residual < residual)) break;
        p = trial;
        residual = trial_residual;
    }
    if (!(residual <= settings.tol)) {
        throw ProjectionError(residual, fmt::format("projection onto '{}' failed from ({}, {}, {}): |d| = {:.3e} > {:.1e}",
                                                    surface.name(), x.x(), x.y(), x.z(), residual, settings.tol));
    }
    return p;
}

void project_all(const LevelSetSurface& surface, Positions& x, double t, const ProjectionSettings& settings) {
    const auto n = static_cast<std::size_t>(x.size() / 3);
    parallel_for(n, [&](std::size_t begin, std::size_t end) {
        for (std::size_t j = begin; j < end; ++j) {
            const auto idx = static_cast<Index>(j);
            node(x, idx) = project(surface, node(x, idx), t, settings);
        }
    });
}

double constraint_residual(const LevelSetSurface& surface, const Positions& x, double t) {
    double worst = 0.0;
    const auto n = static_cast<Index>(x.size() / 3);
    for (Index j = 0; j < n; ++j) {
        worst = std::max(worst, std::abs(surface.d(node(x, j), t)));
    }
    return worst;
}

}  // namespace alemesh

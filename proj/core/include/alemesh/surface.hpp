#pragma once

#include <functional>
#include <optional>
#include <string>

#include "alemesh/mesh.hpp"

namespace alemesh {

/// Gradient norms at or below this are treated as a level-set singularity.
inline constexpr double kGradientFloor = 1e-12;

/// Which hand-made ALE map from the literature applies to a surface, if any.
enum class LiteratureMap { dumbbell, four_hole };

/// Time-dependent surface Gamma(t) = {x : d(x, t) = 0}.
///
/// Only d, its spatial gradient and its time derivative are exposed; the
/// algorithms never look at how a surface is built. All callables must be pure.
class LevelSetSurface {
public:
    using ScalarField = std::function<double(const Vec3&, double)>;
    using VectorField = std::function<Vec3(const Vec3&, double)>;

    LevelSetSurface(std::string name, ScalarField d, VectorField grad_d, ScalarField dt_d);

    const std::string& name() const noexcept { return name_; }

    double d(const Vec3& x, double t) const { return d_(x, t); }
    Vec3 grad_d(const Vec3& x, double t) const { return grad_(x, t); }
    double dt_d(const Vec3& x, double t) const { return dt_(x, t); }

    /// Interval on which the surface is known to be regular.
    double t_begin() const noexcept { return t_begin_; }
    double t_end() const noexcept { return t_end_; }
    bool is_static() const noexcept { return static_; }
    std::optional<LiteratureMap> literature_map() const noexcept { return literature_; }

    LevelSetSurface& set_interval(double t_begin, double t_end);
    LevelSetSurface& set_static(bool value);
    LevelSetSurface& set_literature_map(LiteratureMap kind);

private:
    std::string name_;
    ScalarField d_;
    VectorField grad_;
    ScalarField dt_;
    double t_begin_ = 0.0;
    double t_end_ = 1.0;
    bool static_ = false;
    std::optional<LiteratureMap> literature_;
};

/// v = V nu with V = -dt_d / |grad d| and nu = grad d / |grad d|.
/// Throws SingularSurfaceError when |grad d| <= kGradientFloor.
Vec3 normal_velocity(const LevelSetSurface& surface, const Vec3& x, double t);

struct ProjectionSettings {
    double tol = 1e-12;
    int max_iter = 50;
};

/// Damped first-order closest-point iteration x <- x - d grad d / |grad d|^2,
/// halving the step while |d| fails to decrease. Returns a point with |d| <= tol
/// or throws ProjectionError.
Vec3 project(const LevelSetSurface& surface, const Vec3& x, double t, const ProjectionSettings& settings = {});

/// Projects every node of a stacked position vector.
void project_all(const LevelSetSurface& surface, Positions& x, double t, const ProjectionSettings& settings = {});

/// max_j |d(x_j, t)|.
double constraint_residual(const LevelSetSurface& surface, const Positions& x, double t);

// -- catalog ---------------------------------------------------------------

/// d = x1^2 + x2^2 + K^2 G(x3^2/L^2) - K^2, G(s) = 200 s (s - 199/200),
/// L = 1 + 0.2 sin(4 pi t), K = 0.1 + 0.05 sin(2 pi t). Valid on [0, 0.6].
LevelSetSurface make_dumbbell();

/// d = x1^2/K^2 + G(x2^2) + K^2 G(x3^2/L^2) - 1, G(s) = 31.25 s (s - 0.36)(s - 0.95),
/// L = 1 + 0.3 sin(4 pi t), K = 0.1 + 0.01 sin(2 pi t). Valid on [0, 1].
LevelSetSurface make_four_hole();

/// Static torus around the z axis: (sqrt(x1^2 + x2^2) - R)^2 + x3^2 - r^2.
LevelSetSurface make_torus(double R, double r);

/// Sphere with radius^2 = rho0_sq + rate * t; d = |x|^2 - rho(t)^2.
LevelSetSurface make_sphere(double rho0_sq = 1.0, double rate = 1.0);

/// Resolves `dumbbell`, `four_hole`, `torus:R:r`, `sphere` or `sphere:rho0_sq:rate`.
/// Throws ConfigError on unknown names or bad parameters.
LevelSetSurface surface_from_name(const std::string& spec);

/// Coefficient functions shared by the catalog surfaces and their literature maps.
namespace dumbbell {
double G(double s);
double K(double t);
double L(double t);
}  // namespace dumbbell

namespace four_hole {
double G(double s);
double K(double t);
double L(double t);
}  // namespace four_hole

/// Coordinate-scaling ALE map from the literature, taking a node at time 0 to time t.
/// dumbbell: (x1 K(t)/K(0), x2 K(t)/K(0), x3 L(t)/L(0)); four_hole: (x1 K(t)/K(0), x2, x3 L(t)/L(0)).
Vec3 literature_ale_map(LiteratureMap kind, const Vec3& x0, double t);

/// Same map between two arbitrary times t_from -> t_to.
Vec3 literature_ale_map(LiteratureMap kind, const Vec3& x_from, double t_from, double t_to);

}  // namespace alemesh

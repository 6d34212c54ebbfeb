#ifndef TWOPOINT_GEOMETRY_HPP
#define TWOPOINT_GEOMETRY_HPP

#include <string>
#include <utility>

namespace twopoint {

/// Closed model manifolds with exact time-dependent metrics.
///
/// Every family keeps the metric in closed form, so Ricci tensors, curvature
/// bounds, geodesic distances and the time derivative of the metric are exact.
/// All families satisfy the flow contract dg/dt + 2 Ric >= 0; the shrinking
/// sphere realizes equality (exact Ricci flow).
enum class GeometryFamily { circle, torus2, sphere_shrinking, sphere_static };

const char* to_string(GeometryFamily family);

/// Chart coordinates. circle: x = a in [0, L). torus2: (x, y) = (a, b) in the
/// fundamental domain. spheres: latitude theta = a in [0, pi], longitude = b.
struct Point {
  double a = 0.0;
  double b = 0.0;
};

/// Components of a symmetric bilinear form in the chart basis.
/// dim == 1 uses only `aa`.
struct SymForm {
  double aa = 0.0;
  double ab = 0.0;
  double bb = 0.0;
  int dim = 2;
};

/// Ricci bounds valid over a time interval: -k0 <= Ric <= k1 and |Ric| <= kappa,
/// with kappa = max(k0, k1).
struct CurvatureBounds {
  double k0 = 0.0;
  double k1 = 0.0;
  double kappa = 0.0;
};

class Geometry {
 public:
  static Geometry circle(double length);
  static Geometry torus2(double length_x, double length_y);
  static Geometry sphere_static(double initial_radius);
  static Geometry sphere_shrinking(double initial_radius);

  GeometryFamily family() const { return family_; }
  int dimension() const;
  bool is_sphere() const {
    return family_ == GeometryFamily::sphere_static ||
           family_ == GeometryFamily::sphere_shrinking;
  }

  double circle_length() const { return length_x_; }
  std::pair<double, double> torus_lengths() const { return {length_x_, length_y_}; }
  double initial_radius() const { return r0_; }

  /// Diameter at t = 0 (distances never grow for these families).
  double diameter() const;

  /// Largest valid time (exclusive). Infinite except for the shrinking sphere,
  /// where the radius r(t) = sqrt(r0^2 - 2t) vanishes at t = r0^2 / 2.
  double horizon() const;

  /// Sphere radius at time t; throws for non-sphere families.
  double radius(double t) const;

  SymForm metric_at(const Point& p, double t) const;
  SymForm ricci_at(const Point& p, double t) const;

  /// Analytic d/dt of metric_at, from the closed-form family.
  SymForm metric_time_derivative(const Point& p, double t) const;

  /// Geodesic distance under g(t). Exact minimal wrap on circle/torus,
  /// great-circle arc scaled by r(t) on spheres.
  double distance(const Point& x, const Point& y, double t) const;

  /// Tightest Ricci bounds valid over the whole interval [t0, t1].
  CurvatureBounds curvature_bounds(double t0, double t1) const;

  /// Smallest eigenvalue of dg/dt + 2 Ric in a g-orthonormal basis.
  /// Zero for static flat families and for the shrinking sphere.
  double supersolution_residual(const Point& p, double t) const;

  std::string describe() const;

 private:
  Geometry(GeometryFamily family, double lx, double ly, double r0);
  void require_time(double t) const;
  void require_sphere_point(const Point& p) const;

  GeometryFamily family_;
  double length_x_ = 0.0;  // circle length / torus x-length
  double length_y_ = 0.0;  // torus y-length
  double r0_ = 0.0;        // sphere initial radius
};

}  // namespace twopoint

#endif  // TWOPOINT_GEOMETRY_HPP

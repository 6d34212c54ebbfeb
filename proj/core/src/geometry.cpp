#include "twopoint/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "twopoint/errors.hpp"

namespace twopoint {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Minimal periodic representative of dx in (-L/2, L/2].
double wrap_distance(double dx, double length) {
  double m = std::fmod(std::fabs(dx), length);
  return std::min(m, length - m);
}

// Great-circle angle between (theta1, lon1) and (theta2, lon2) on the unit
// sphere, via the haversine form. Stable near coincident points and exact
// (up to rounding) for the equal-longitude configuration, where it reduces
// to |theta1 - theta2|.
double central_angle(const Point& x, const Point& y) {
  const double sdt = std::sin(0.5 * (x.a - y.a));
  const double sdl = std::sin(0.5 * (x.b - y.b));
  const double h = sdt * sdt + std::sin(x.a) * std::sin(y.a) * sdl * sdl;
  return 2.0 * std::asin(std::min(1.0, std::sqrt(std::max(0.0, h))));
}

}  // namespace

const char* to_string(GeometryFamily family) {
  switch (family) {
    case GeometryFamily::circle: return "circle";
    case GeometryFamily::torus2: return "torus2";
    case GeometryFamily::sphere_shrinking: return "sphere_shrinking";
    case GeometryFamily::sphere_static: return "sphere_static";
  }
  return "?";
}

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::config: return "config";
    case ErrorKind::domain: return "domain";
    case ErrorKind::hypothesis: return "hypothesis";
    case ErrorKind::divergence: return "divergence";
    case ErrorKind::io: return "io";
  }
  return "?";
}

Geometry::Geometry(GeometryFamily family, double lx, double ly, double r0)
    : family_(family), length_x_(lx), length_y_(ly), r0_(r0) {}

Geometry Geometry::circle(double length) {
  if (!(length > 0.0)) throw Error::config("circle length must be positive");
  return Geometry(GeometryFamily::circle, length, 0.0, 0.0);
}

Geometry Geometry::torus2(double length_x, double length_y) {
  if (!(length_x > 0.0) || !(length_y > 0.0))
    throw Error::config("torus lengths must be positive");
  return Geometry(GeometryFamily::torus2, length_x, length_y, 0.0);
}

Geometry Geometry::sphere_static(double initial_radius) {
  if (!(initial_radius > 0.0)) throw Error::config("sphere radius must be positive");
  return Geometry(GeometryFamily::sphere_static, 0.0, 0.0, initial_radius);
}

Geometry Geometry::sphere_shrinking(double initial_radius) {
  if (!(initial_radius > 0.0)) throw Error::config("sphere radius must be positive");
  return Geometry(GeometryFamily::sphere_shrinking, 0.0, 0.0, initial_radius);
}

int Geometry::dimension() const {
  return family_ == GeometryFamily::circle ? 1 : 2;
}

double Geometry::diameter() const {
  switch (family_) {
    case GeometryFamily::circle: return 0.5 * length_x_;
    case GeometryFamily::torus2:
      return 0.5 * std::hypot(length_x_, length_y_);
    case GeometryFamily::sphere_shrinking:
    case GeometryFamily::sphere_static: return kPi * r0_;
  }
  return 0.0;
}

double Geometry::horizon() const {
  if (family_ == GeometryFamily::sphere_shrinking) return 0.5 * r0_ * r0_;
  return std::numeric_limits<double>::infinity();
}

void Geometry::require_time(double t) const {
  if (t < 0.0) throw Error::domain("time must be nonnegative");
  if (t >= horizon()) {
    std::ostringstream os;
    os << "horizon exceeded: t = " << t << " >= r0^2/2 = " << horizon()
       << " for sphere_shrinking";
    throw Error::domain(os.str());
  }
}

void Geometry::require_sphere_point(const Point& p) const {
  if (p.a < -1e-9 || p.a > kPi + 1e-9)
    throw Error::domain("sphere latitude outside [0, pi]");
}

double Geometry::radius(double t) const {
  require_time(t);
  switch (family_) {
    case GeometryFamily::sphere_static: return r0_;
    case GeometryFamily::sphere_shrinking:
      // r(t)^2 = r0^2 - 2t, the exact Ricci-flow evolution of the round 2-sphere.
      return std::sqrt(r0_ * r0_ - 2.0 * t);
    default:
      throw Error::domain("radius() is only defined for sphere families");
  }
}

SymForm Geometry::metric_at(const Point& p, double t) const {
  require_time(t);
  switch (family_) {
    case GeometryFamily::circle: return SymForm{1.0, 0.0, 0.0, 1};
    case GeometryFamily::torus2: return SymForm{1.0, 0.0, 1.0, 2};
    case GeometryFamily::sphere_static:
    case GeometryFamily::sphere_shrinking: {
      require_sphere_point(p);
      const double r2 = family_ == GeometryFamily::sphere_shrinking
                            ? r0_ * r0_ - 2.0 * t
                            : r0_ * r0_;
      const double s = std::sin(p.a);
      return SymForm{r2, 0.0, r2 * s * s, 2};
    }
  }
  return SymForm{};
}

SymForm Geometry::ricci_at(const Point& p, double t) const {
  require_time(t);
  switch (family_) {
    case GeometryFamily::circle: return SymForm{0.0, 0.0, 0.0, 1};
    case GeometryFamily::torus2: return SymForm{0.0, 0.0, 0.0, 2};
    case GeometryFamily::sphere_static:
    case GeometryFamily::sphere_shrinking: {
      require_sphere_point(p);
      // Ric = (1/r^2) g = round unit-sphere metric; scale-free in dimension 2.
      const double s = std::sin(p.a);
      return SymForm{1.0, 0.0, s * s, 2};
    }
  }
  return SymForm{};
}

SymForm Geometry::metric_time_derivative(const Point& p, double t) const {
  require_time(t);
  if (family_ == GeometryFamily::sphere_shrinking) {
    require_sphere_point(p);
    // d(r^2)/dt = -2 exactly.
    const double s = std::sin(p.a);
    return SymForm{-2.0, 0.0, -2.0 * s * s, 2};
  }
  const int dim = dimension();
  return SymForm{0.0, 0.0, 0.0, dim};
}

double Geometry::distance(const Point& x, const Point& y, double t) const {
  require_time(t);
  switch (family_) {
    case GeometryFamily::circle:
      return wrap_distance(x.a - y.a, length_x_);
    case GeometryFamily::torus2: {
      // Minimum over the 9 adjacent lattice shifts; exact for
      // fundamental-domain coordinates.
      const double dx0 = x.a - y.a;
      const double dy0 = x.b - y.b;
      double best = std::numeric_limits<double>::infinity();
      for (int sx = -1; sx <= 1; ++sx) {
        for (int sy = -1; sy <= 1; ++sy) {
          const double dx = dx0 + sx * length_x_;
          const double dy = dy0 + sy * length_y_;
          best = std::min(best, dx * dx + dy * dy);
        }
      }
      return std::sqrt(best);
    }
    case GeometryFamily::sphere_static:
    case GeometryFamily::sphere_shrinking:
      require_sphere_point(x);
      require_sphere_point(y);
      return radius(t) * central_angle(x, y);
  }
  return 0.0;
}

CurvatureBounds Geometry::curvature_bounds(double t0, double t1) const {
  if (!(t0 >= 0.0) || !(t1 >= t0))
    throw Error::domain("curvature_bounds requires 0 <= t0 <= t1");
  require_time(t1);
  switch (family_) {
    case GeometryFamily::circle:
    case GeometryFamily::torus2: return CurvatureBounds{0.0, 0.0, 0.0};
    case GeometryFamily::sphere_static: {
      const double k = 1.0 / (r0_ * r0_);
      return CurvatureBounds{0.0, k, k};
    }
    case GeometryFamily::sphere_shrinking: {
      // Ric eigenvalue 1/r(t)^2 grows as the sphere shrinks; supremum at t1.
      const double r1 = radius(t1);
      const double k = 1.0 / (r1 * r1);
      return CurvatureBounds{0.0, k, k};
    }
  }
  return CurvatureBounds{};
}

double Geometry::supersolution_residual(const Point& p, double t) const {
  require_time(t);
  switch (family_) {
    case GeometryFamily::circle:
    case GeometryFamily::torus2:
      return 0.0;  // static flat: dg/dt = 0 and Ric = 0
    case GeometryFamily::sphere_static: {
      require_sphere_point(p);
      // dg/dt = 0, 2 Ric = (2/r0^2) g: both eigenvalues equal 2/r0^2.
      return 2.0 / (r0_ * r0_);
    }
    case GeometryFamily::sphere_shrinking: {
      require_sphere_point(p);
      // dg/dt + 2 Ric = (d(r^2)/dt + 2) ghat = 0 exactly.
      const double scale = -2.0 + 2.0;
      const double r = radius(t);
      return scale / (r * r);
    }
  }
  return 0.0;
}

std::string Geometry::describe() const {
  std::ostringstream os;
  os << to_string(family_);
  switch (family_) {
    case GeometryFamily::circle: os << "(L=" << length_x_ << ")"; break;
    case GeometryFamily::torus2:
      os << "(" << length_x_ << "x" << length_y_ << ")";
      break;
    default: os << "(r0=" << r0_ << ")"; break;
  }
  return os.str();
}

}  // namespace twopoint

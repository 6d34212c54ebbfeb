#include "twopoint/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "twopoint/errors.hpp"

namespace twopoint {

namespace {

constexpr double kPi = 3.14159265358979323846;

}  // namespace

Grid Grid::make(const Geometry& geom, int n) {
  if (n < 3) throw Error::config("grid size must be at least 3");
  Grid g;
  switch (geom.family()) {
    case GeometryFamily::circle:
      g.kind = GridKind::circle;
      g.nx = n;
      g.hx = geom.circle_length() / n;
      break;
    case GeometryFamily::torus2: {
      g.kind = GridKind::torus2;
      g.nx = g.ny = n;
      auto [lx, ly] = geom.torus_lengths();
      g.hx = lx / n;
      g.hy = ly / n;
      break;
    }
    case GeometryFamily::sphere_static:
    case GeometryFamily::sphere_shrinking:
      g.kind = GridKind::sphere_latitude;
      g.nx = n;
      g.hx = kPi / (n - 1);
      break;
  }
  return g;
}

Point Grid::node(int k) const {
  switch (kind) {
    case GridKind::circle: return Point{k * hx, 0.0};
    case GridKind::torus2: return Point{(k / ny) * hx, (k % ny) * hy};
    case GridKind::sphere_latitude: return Point{k * hx, 0.0};
  }
  return Point{};
}

double Grid::metric_spacing(double radius) const {
  switch (kind) {
    case GridKind::circle: return hx;
    case GridKind::torus2: return std::min(hx, hy);
    case GridKind::sphere_latitude: return radius * hx;
  }
  return hx;
}

ScalarField ScalarField::sample(const Geometry& geom, int n,
                                const std::function<double(Point)>& f, double t) {
  ScalarField field;
  field.geom = geom;
  field.grid = Grid::make(geom, n);
  field.t = t;
  field.values.resize(field.grid.node_count());
  for (int k = 0; k < field.grid.node_count(); ++k)
    field.values[k] = f(field.grid.node(k));
  return field;
}

ScalarField ScalarField::constant(const Geometry& geom, int n, double value,
                                  double t) {
  return sample(geom, n, [value](Point) { return value; }, t);
}

std::vector<double> gradient_norm(const ScalarField& field) {
  const Grid& g = field.grid;
  const std::vector<double>& u = field.values;
  std::vector<double> out(u.size(), 0.0);
  switch (g.kind) {
    case GridKind::circle: {
      const int n = g.nx;
      for (int i = 0; i < n; ++i) {
        const double du = u[(i + 1) % n] - u[(i - 1 + n) % n];
        out[i] = std::fabs(du) / (2.0 * g.hx);
      }
      break;
    }
    case GridKind::torus2: {
      const int n = g.nx;
      for (int ix = 0; ix < n; ++ix) {
        for (int iy = 0; iy < n; ++iy) {
          const double ux = (u[((ix + 1) % n) * n + iy] - u[((ix - 1 + n) % n) * n + iy]) /
                            (2.0 * g.hx);
          const double uy = (u[ix * n + (iy + 1) % n] - u[ix * n + (iy - 1 + n) % n]) /
                            (2.0 * g.hy);
          out[ix * n + iy] = std::hypot(ux, uy);
        }
      }
      break;
    }
    case GridKind::sphere_latitude: {
      const int n = g.nx;
      const double r = field.geom.radius(field.t);
      for (int j = 1; j + 1 < n; ++j)
        out[j] = std::fabs(u[j + 1] - u[j - 1]) / (2.0 * g.hx * r);
      out[0] = std::fabs(u[1] - u[0]) / (g.hx * r);
      out[n - 1] = std::fabs(u[n - 1] - u[n - 2]) / (g.hx * r);
      break;
    }
  }
  return out;
}

std::vector<double> metric_laplacian(const ScalarField& field) {
  const Grid& g = field.grid;
  const std::vector<double>& u = field.values;
  std::vector<double> out(u.size(), 0.0);
  switch (g.kind) {
    case GridKind::circle: {
      const int n = g.nx;
      const double ih2 = 1.0 / (g.hx * g.hx);
      for (int i = 0; i < n; ++i)
        out[i] = (u[(i + 1) % n] - 2.0 * u[i] + u[(i - 1 + n) % n]) * ih2;
      break;
    }
    case GridKind::torus2: {
      const int n = g.nx;
      const double ihx2 = 1.0 / (g.hx * g.hx);
      const double ihy2 = 1.0 / (g.hy * g.hy);
      for (int ix = 0; ix < n; ++ix) {
        for (int iy = 0; iy < n; ++iy) {
          const int k = ix * n + iy;
          const double uxx =
              (u[((ix + 1) % n) * n + iy] - 2.0 * u[k] + u[((ix - 1 + n) % n) * n + iy]) * ihx2;
          const double uyy =
              (u[ix * n + (iy + 1) % n] - 2.0 * u[k] + u[ix * n + (iy - 1 + n) % n]) * ihy2;
          out[k] = uxx + uyy;
        }
      }
      break;
    }
    case GridKind::sphere_latitude: {
      const int n = g.nx;
      const double r = field.geom.radius(field.t);
      const double ir2 = 1.0 / (r * r);
      const double ih2 = 1.0 / (g.hx * g.hx);
      for (int j = 1; j + 1 < n; ++j) {
        const double utt = (u[j + 1] - 2.0 * u[j] + u[j - 1]) * ih2;
        const double ut = (u[j + 1] - u[j - 1]) / (2.0 * g.hx);
        const double theta = j * g.hx;
        out[j] = (utt + ut / std::tan(theta)) * ir2;
      }
      // pole rows: ghost reflection, cot(theta) u_theta -> u_theta_theta
      out[0] = 2.0 * (2.0 * (u[1] - u[0]) * ih2) * ir2;
      out[n - 1] = 2.0 * (2.0 * (u[n - 2] - u[n - 1]) * ih2) * ir2;
      break;
    }
  }
  return out;
}

namespace {

// Shared per-node operator pieces so step(), cfl_dt() and the Li-Yau checker
// see one discretization.
struct NodeTerms {
  double lap = 0.0;      // metric Laplacian
  double radial = 0.0;   // Hess(n, n) with n = Du/|Du| (regularized)
  double grad = 0.0;     // metric |Du|
};

void node_terms_circle(const Grid& g, const std::vector<double>& u,
                       std::vector<NodeTerms>& out) {
  const int n = g.nx;
  const double ih2 = 1.0 / (g.hx * g.hx);
  for (int i = 0; i < n; ++i) {
    const double up = u[(i + 1) % n];
    const double um = u[(i - 1 + n) % n];
    const double uxx = (up - 2.0 * u[i] + um) * ih2;
    out[i].lap = uxx;
    out[i].radial = uxx;
    out[i].grad = std::fabs(up - um) / (2.0 * g.hx);
  }
}

void node_terms_torus(const Grid& g, const std::vector<double>& u, double eps,
                      std::vector<NodeTerms>& out) {
  const int n = g.nx;
  const double ihx2 = 1.0 / (g.hx * g.hx);
  const double ihy2 = 1.0 / (g.hy * g.hy);
  for (int ix = 0; ix < n; ++ix) {
    const int xp = (ix + 1) % n, xm = (ix - 1 + n) % n;
    for (int iy = 0; iy < n; ++iy) {
      const int yp = (iy + 1) % n, ym = (iy - 1 + n) % n;
      const int k = ix * n + iy;
      const double uxx = (u[xp * n + iy] - 2.0 * u[k] + u[xm * n + iy]) * ihx2;
      const double uyy = (u[ix * n + yp] - 2.0 * u[k] + u[ix * n + ym]) * ihy2;
      const double uxy = (u[xp * n + yp] - u[xp * n + ym] - u[xm * n + yp] +
                          u[xm * n + ym]) /
                         (4.0 * g.hx * g.hy);
      const double ux = (u[xp * n + iy] - u[xm * n + iy]) / (2.0 * g.hx);
      const double uy = (u[ix * n + yp] - u[ix * n + ym]) / (2.0 * g.hy);
      const double g2 = ux * ux + uy * uy;
      const double den = g2 + eps * eps;
      out[k].lap = uxx + uyy;
      out[k].radial = den > 0.0
                          ? (ux * ux * uxx + 2.0 * ux * uy * uxy + uy * uy * uyy) / den
                          : 0.0;
      out[k].grad = std::sqrt(g2);
    }
  }
}

void node_terms_sphere(const Grid& g, const std::vector<double>& u, double r,
                       std::vector<NodeTerms>& out) {
  const int n = g.nx;
  const double ir2 = 1.0 / (r * r);
  const double ih2 = 1.0 / (g.hx * g.hx);
  for (int j = 1; j + 1 < n; ++j) {
    const double utt = (u[j + 1] - 2.0 * u[j] + u[j - 1]) * ih2;
    const double ut = (u[j + 1] - u[j - 1]) / (2.0 * g.hx);
    const double theta = j * g.hx;
    out[j].lap = (utt + ut / std::tan(theta)) * ir2;
    out[j].radial = utt * ir2;
    out[j].grad = std::fabs(ut) / r;
  }
  const double utt0 = 2.0 * (u[1] - u[0]) * ih2;
  out[0].lap = 2.0 * utt0 * ir2;
  out[0].radial = utt0 * ir2;
  out[0].grad = std::fabs(u[1] - u[0]) / (g.hx * r);
  const double uttn = 2.0 * (u[n - 2] - u[n - 1]) * ih2;
  out[n - 1].lap = 2.0 * uttn * ir2;
  out[n - 1].radial = uttn * ir2;
  out[n - 1].grad = std::fabs(u[n - 1] - u[n - 2]) / (g.hx * r);
}

std::vector<NodeTerms> node_terms(const ScalarField& field, double eps) {
  std::vector<NodeTerms> terms(field.values.size());
  switch (field.grid.kind) {
    case GridKind::circle:
      node_terms_circle(field.grid, field.values, terms);
      break;
    case GridKind::torus2:
      node_terms_torus(field.grid, field.values, eps, terms);
      break;
    case GridKind::sphere_latitude:
      node_terms_sphere(field.grid, field.values, field.geom.radius(field.t), terms);
      break;
  }
  return terms;
}

// Projector weight |Du|^2 / (|Du|^2 + eps^2). The convention at the measure
// zero case eps = 0, |Du| = 0 follows the continuous extension: in dimension
// one the split collapses onto alpha, elsewhere onto beta.
double projector_weight(double grad, double eps, int dim) {
  const double den = grad * grad + eps * eps;
  if (den == 0.0) return dim == 1 ? 1.0 : 0.0;
  return grad * grad / den;
}

double max_diffusivity(const ScalarField& field, const CoefficientFamily& fam,
                       const std::vector<NodeTerms>& terms) {
  double m = 0.0;
  for (size_t k = 0; k < terms.size(); ++k) {
    const Coefficients c = fam.evaluate(field.values[k], terms[k].grad, field.t);
    m = std::max(m, std::max(c.alpha, c.beta));
  }
  return m;
}

double cfl_from(const ScalarField& field, double max_diff, double cfl) {
  if (!std::isfinite(max_diff))
    throw Error::config("coefficients are not finite on this field");
  if (!(max_diff > 0.0))
    throw Error::config("zero or negative diffusivity everywhere; no stable dt");
  const Grid& g = field.grid;
  double radius = 1.0;
  if (g.kind == GridKind::sphere_latitude) radius = field.geom.radius(field.t);
  double h = g.metric_spacing(radius);
  double dt = cfl * h * h / (2.0 * max_diff);
  if (field.geom.family() == GeometryFamily::sphere_shrinking) {
    // Re-evaluate the spacing at the smaller upcoming radius.
    const double t2 = std::min(field.t + dt, field.geom.horizon() * (1.0 - 1e-12));
    h = g.metric_spacing(field.geom.radius(t2));
    dt = cfl * h * h / (2.0 * max_diff);
  }
  return dt;
}

}  // namespace

double cfl_dt(const ScalarField& field, const CoefficientFamily& fam, double cfl) {
  const auto terms = node_terms(field, fam.epsilon_reg());
  return cfl_from(field, max_diffusivity(field, fam, terms), cfl);
}

ScalarField step(const ScalarField& field, const CoefficientFamily& fam, double dt) {
  if (!(dt > 0.0)) throw Error::config("dt must be positive");
  const auto terms = node_terms(field, fam.epsilon_reg());
  const double max_diff = max_diffusivity(field, fam, terms);
  const double hard_limit = cfl_from(field, max_diff, 1.0);
  if (dt > hard_limit * (1.0 + 1e-9)) {
    std::ostringstream os;
    os << "CFL violation: dt = " << dt << " exceeds stable limit " << hard_limit;
    throw Error::config(os.str());
  }

  const int dim = field.geom.dimension();
  const double eps = fam.epsilon_reg();
  ScalarField next = field;
  next.t = field.t + dt;
  for (size_t k = 0; k < field.values.size(); ++k) {
    const NodeTerms& nt = terms[k];
    const Coefficients c = fam.evaluate(field.values[k], nt.grad, field.t);
    const double w = projector_weight(nt.grad, eps, dim);
    const double rate = c.beta * nt.lap + (c.alpha - c.beta) * w * nt.radial + c.q;
    next.values[k] = field.values[k] + dt * rate;
    if (!std::isfinite(next.values[k]))
      throw Error::divergence("solution diverged (non-finite value) during step");
  }
  return next;
}

Trajectory evolve(const ScalarField& u0, const CoefficientFamily& fam, double t_end,
                  const std::vector<double>& snapshot_times, StepControls controls) {
  if (!(controls.cfl > 0.0) || controls.cfl > 1.0)
    throw Error::config("cfl factor must lie in (0, 1]");
  if (t_end < u0.t) throw Error::config("t_end precedes the initial time");
  if (t_end >= u0.geom.horizon()) {
    std::ostringstream os;
    os << "horizon exceeded: t_end = " << t_end << " >= " << u0.geom.horizon();
    throw Error::domain(os.str());
  }

  std::set<double> targets{u0.t, t_end};
  for (double s : snapshot_times) {
    if (s < u0.t || s > t_end)
      throw Error::config("snapshot time outside [t0, t_end]");
    targets.insert(s);
  }

  Trajectory traj;
  traj.controls = controls;
  ScalarField current = u0;
  const double time_scale = std::max(1.0, std::fabs(t_end));
  for (double target : targets) {
    while (current.t < target - 1e-14 * time_scale) {
      double dt = std::min(cfl_dt(current, fam, controls.cfl), target - current.t);
      current = step(current, fam, dt);
      if (std::fabs(current.t - target) <= 1e-14 * time_scale) current.t = target;
    }
    current.t = target;
    traj.snapshots.push_back(current);
  }
  return traj;
}

}  // namespace twopoint

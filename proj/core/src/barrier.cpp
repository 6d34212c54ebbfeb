#include "twopoint/barrier.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include "twopoint/errors.hpp"

namespace twopoint {

namespace {

// d/ds on a uniform grid: centered inside, second-order one-sided at the ends.
std::vector<double> d_ds(const std::vector<double>& f, double h) {
  const size_t n = f.size();
  std::vector<double> out(n, 0.0);
  if (n < 3) {
    if (n == 2) out[0] = out[1] = (f[1] - f[0]) / h;
    return out;
  }
  for (size_t i = 1; i + 1 < n; ++i) out[i] = (f[i + 1] - f[i - 1]) / (2.0 * h);
  out[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
  out[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * h);
  return out;
}

// d^2/ds^2: three-point inside, second-order one-sided at the ends.
std::vector<double> d2_ds2(const std::vector<double>& f, double h) {
  const size_t n = f.size();
  std::vector<double> out(n, 0.0);
  if (n < 4) return out;
  const double ih2 = 1.0 / (h * h);
  for (size_t i = 1; i + 1 < n; ++i) out[i] = (f[i + 1] - 2.0 * f[i] + f[i - 1]) * ih2;
  out[0] = (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) * ih2;
  out[n - 1] = (2.0 * f[n - 1] - 5.0 * f[n - 2] + 4.0 * f[n - 3] - f[n - 4]) * ih2;
  return out;
}

// Three-point first derivative on a possibly non-uniform axis.
double d_dt_at(const std::vector<double>& t, const std::vector<double>& f, size_t j) {
  const size_t n = t.size();
  if (n == 1) return 0.0;
  if (n == 2) return (f[1] - f[0]) / (t[1] - t[0]);
  if (j == 0) {
    const double h1 = t[1] - t[0], h2 = t[2] - t[1];
    return (-(2.0 * h1 + h2) / (h1 * (h1 + h2))) * f[0] +
           ((h1 + h2) / (h1 * h2)) * f[1] - (h1 / (h2 * (h1 + h2))) * f[2];
  }
  if (j == n - 1) {
    const double h1 = t[n - 2] - t[n - 3], h2 = t[n - 1] - t[n - 2];
    return (h2 / (h1 * (h1 + h2))) * f[n - 3] - ((h1 + h2) / (h1 * h2)) * f[n - 2] +
           ((h1 + 2.0 * h2) / (h2 * (h1 + h2))) * f[n - 1];
  }
  const double h1 = t[j] - t[j - 1], h2 = t[j + 1] - t[j];
  return (-(h2 / (h1 * (h1 + h2)))) * f[j - 1] + ((h2 - h1) / (h1 * h2)) * f[j] +
         (h1 / (h2 * (h1 + h2))) * f[j + 1];
}

std::vector<double> uniform_grid(double max_value, int nodes) {
  std::vector<double> g(nodes);
  for (int i = 0; i < nodes; ++i)
    g[i] = nodes == 1 ? 0.0 : max_value * i / (nodes - 1);
  return g;
}

double require_uniform_spacing(const std::vector<double>& grid, const char* what) {
  if (grid.size() < 2) throw Error::config(std::string(what) + ": need at least 2 nodes");
  const double h = grid[1] - grid[0];
  for (size_t i = 0; i + 1 < grid.size(); ++i) {
    const double d = grid[i + 1] - grid[i];
    if (!(d > 0.0) || std::fabs(d - h) > 1e-9 * std::max(1.0, std::fabs(h)))
      throw Error::config(std::string(what) + ": grid must be uniform and increasing");
  }
  return h;
}

}  // namespace

const char* to_string(ConditionMode mode) {
  switch (mode) {
    case ConditionMode::elliptic_1_3: return "elliptic_1_3";
    case ConditionMode::parabolic_thm14: return "parabolic_thm14";
    case ConditionMode::parabolic_eq16: return "parabolic_eq16";
  }
  return "?";
}

const char* to_string(BarrierKind kind) {
  switch (kind) {
    case BarrierKind::linear: return "linear";
    case BarrierKind::sine: return "sine";
    case BarrierKind::exp_sine: return "exp_sine";
    case BarrierKind::tabulated: return "tabulated";
  }
  return "?";
}

BarrierEval Barrier::closed_form(double s, double t) const {
  BarrierEval e;
  switch (kind_) {
    case BarrierKind::linear:
      e.phi = a_ * s + b_ * t + c_;
      e.phi_s = a_;
      e.phi_ss = 0.0;
      e.phi_t = b_;
      break;
    case BarrierKind::sine: {
      const double base = a_ * std::sin(b_ * s);
      e.phi = base;
      e.phi_s = a_ * b_ * std::cos(b_ * s);
      e.phi_ss = -(b_ * b_) * base;
      e.phi_t = 0.0;
      break;
    }
    case BarrierKind::exp_sine: {
      const double base = a_ * std::exp(-b_ * t) * std::sin(c_ * s);
      e.phi = base;
      e.phi_s = a_ * std::exp(-b_ * t) * c_ * std::cos(c_ * s);
      e.phi_ss = -(c_ * c_) * base;
      e.phi_t = -b_ * base;
      break;
    }
    case BarrierKind::tabulated: break;
  }
  return e;
}

void Barrier::build_tables() {
  const size_t ns = s_grid_.size();
  const size_t nt = t_grid_.size();
  if (kind_ != BarrierKind::tabulated) {
    phi_.resize(ns * nt);
    phi_s_.resize(ns * nt);
    phi_ss_.resize(ns * nt);
    phi_t_.resize(ns * nt);
    for (size_t j = 0; j < nt; ++j)
      for (size_t i = 0; i < ns; ++i) {
        const BarrierEval e = closed_form(s_grid_[i], t_grid_[j]);
        const size_t k = j * ns + i;
        phi_[k] = e.phi;
        phi_s_[k] = e.phi_s;
        phi_ss_[k] = e.phi_ss;
        phi_t_[k] = e.phi_t;
      }
    return;
  }

  const double h = require_uniform_spacing(s_grid_, "barrier s-grid");
  phi_s_.resize(ns * nt);
  phi_ss_.resize(ns * nt);
  std::vector<double> column(ns);
  for (size_t j = 0; j < nt; ++j) {
    std::copy_n(phi_.begin() + j * ns, ns, column.begin());
    const auto ds = d_ds(column, h);
    const auto dss = d2_ds2(column, h);
    std::copy(ds.begin(), ds.end(), phi_s_.begin() + j * ns);
    std::copy(dss.begin(), dss.end(), phi_ss_.begin() + j * ns);
  }
  if (phi_t_.empty()) {
    phi_t_.resize(ns * nt);
    std::vector<double> series(nt);
    for (size_t i = 0; i < ns; ++i) {
      for (size_t j = 0; j < nt; ++j) series[j] = phi_[j * ns + i];
      for (size_t j = 0; j < nt; ++j) phi_t_[j * ns + i] = d_dt_at(t_grid_, series, j);
    }
  }
}

void Barrier::validate_monotone() const {
  const size_t ns = s_grid_.size();
  for (size_t j = 0; j < t_grid_.size(); ++j)
    for (size_t i = 0; i < ns; ++i)
      if (!(phi_s_[j * ns + i] > 0.0)) {
        std::ostringstream os;
        os << "barrier is not strictly increasing: phi' = " << phi_s_[j * ns + i]
           << " at (s, t) = (" << s_grid_[i] << ", " << t_grid_[j] << ")";
        throw Error::domain(os.str());
      }
}

Barrier Barrier::linear(double slope, double time_slope, double offset, double s_max,
                        double t_max, int s_nodes, int t_nodes) {
  if (s_nodes < 2 || t_nodes < 1) throw Error::config("barrier grid too small");
  if (!(s_max > 0.0)) throw Error::config("barrier s_max must be positive");
  Barrier b;
  b.kind_ = BarrierKind::linear;
  b.a_ = slope;
  b.b_ = time_slope;
  b.c_ = offset;
  b.s_grid_ = uniform_grid(s_max, s_nodes);
  b.t_grid_ = uniform_grid(t_max, t_nodes);
  b.build_tables();
  b.validate_monotone();
  return b;
}

Barrier Barrier::sine(double amp, double freq, double s_max, double t_max,
                      int s_nodes, int t_nodes) {
  if (s_nodes < 2 || t_nodes < 1) throw Error::config("barrier grid too small");
  Barrier b;
  b.kind_ = BarrierKind::sine;
  b.a_ = amp;
  b.b_ = freq;
  b.s_grid_ = uniform_grid(s_max, s_nodes);
  b.t_grid_ = uniform_grid(t_max, t_nodes);
  b.build_tables();
  b.validate_monotone();
  return b;
}

Barrier Barrier::exp_sine(double amp, double rate, double freq, double s_max,
                          double t_max, int s_nodes, int t_nodes) {
  if (s_nodes < 2 || t_nodes < 1) throw Error::config("barrier grid too small");
  Barrier b;
  b.kind_ = BarrierKind::exp_sine;
  b.a_ = amp;
  b.b_ = rate;
  b.c_ = freq;
  b.s_grid_ = uniform_grid(s_max, s_nodes);
  b.t_grid_ = uniform_grid(t_max, t_nodes);
  b.build_tables();
  b.validate_monotone();
  return b;
}

Barrier Barrier::from_samples(std::vector<double> s_grid, std::vector<double> t_grid,
                              std::vector<double> phi) {
  if (s_grid.size() < 4) throw Error::config("tabulated barrier needs >= 4 s-nodes");
  if (t_grid.empty()) throw Error::config("tabulated barrier needs >= 1 t-node");
  if (phi.size() != s_grid.size() * t_grid.size())
    throw Error::config("tabulated barrier: phi size must be s_nodes * t_nodes");
  for (size_t j = 0; j + 1 < t_grid.size(); ++j)
    if (!(t_grid[j] < t_grid[j + 1]))
      throw Error::config("tabulated barrier: t-grid must be increasing");
  for (double v : phi)
    if (!std::isfinite(v)) throw Error::config("tabulated barrier: phi must be finite");
  Barrier b;
  b.kind_ = BarrierKind::tabulated;
  b.s_grid_ = std::move(s_grid);
  b.t_grid_ = std::move(t_grid);
  b.phi_ = std::move(phi);
  b.build_tables();
  b.validate_monotone();
  return b;
}

BarrierEval Barrier::at_node(int i_s, int j_t) const {
  const size_t k = static_cast<size_t>(j_t) * s_grid_.size() + i_s;
  return BarrierEval{phi_[k], phi_s_[k], phi_ss_[k], phi_t_[k]};
}

BarrierEval Barrier::eval(double s, double t) const {
  const double s_tol = 1e-12 * std::max(1.0, s_max());
  const double t_tol = 1e-12 * std::max(1.0, std::fabs(t_max()) + 1.0);
  if (s < -s_tol || s > s_max() + s_tol || t < t_min() - t_tol || t > t_max() + t_tol) {
    std::ostringstream os;
    os << "barrier evaluated outside its domain: (s, t) = (" << s << ", " << t
       << "), domain [0, " << s_max() << "] x [" << t_min() << ", " << t_max() << "]";
    throw Error::domain(os.str());
  }
  s = std::clamp(s, 0.0, s_max());
  t = std::clamp(t, t_min(), t_max());

  if (analytic()) return closed_form(s, t);

  const size_t ns = s_grid_.size();
  const size_t nt = t_grid_.size();

  size_t jt = 0;
  double wt = 0.0;
  if (nt > 1) {
    const auto it = std::upper_bound(t_grid_.begin(), t_grid_.end(), t);
    jt = static_cast<size_t>(std::clamp<std::ptrdiff_t>(it - t_grid_.begin() - 1, 0,
                                                        static_cast<std::ptrdiff_t>(nt) - 2));
    wt = (t - t_grid_[jt]) / (t_grid_[jt + 1] - t_grid_[jt]);
  }

  const double h = s_grid_[1] - s_grid_[0];
  size_t is = std::min<size_t>(static_cast<size_t>(std::max(0.0, (s - s_grid_[0]) / h)),
                               ns - 2);
  const double xi = std::clamp((s - s_grid_[is]) / h, 0.0, 1.0);

  auto blended = [&](const std::vector<double>& table, size_t i) {
    const double v0 = table[jt * ns + i];
    return nt > 1 ? v0 + wt * (table[(jt + 1) * ns + i] - v0) : v0;
  };

  // Cubic Hermite in s from the node values and node slopes; phi_s is the
  // exact derivative of the interpolant, so at nodes both match the tables.
  const double p0 = blended(phi_, is);
  const double p1 = blended(phi_, is + 1);
  const double m0 = blended(phi_s_, is) * h;
  const double m1 = blended(phi_s_, is + 1) * h;
  const double xi2 = xi * xi;
  const double xi3 = xi2 * xi;

  BarrierEval e;
  e.phi = (2.0 * xi3 - 3.0 * xi2 + 1.0) * p0 + (xi3 - 2.0 * xi2 + xi) * m0 +
          (-2.0 * xi3 + 3.0 * xi2) * p1 + (xi3 - xi2) * m1;
  e.phi_s = ((6.0 * xi2 - 6.0 * xi) * p0 + (3.0 * xi2 - 4.0 * xi + 1.0) * m0 +
             (-6.0 * xi2 + 6.0 * xi) * p1 + (3.0 * xi2 - 2.0 * xi) * m1) /
            h;
  e.phi_ss = (1.0 - xi) * blended(phi_ss_, is) + xi * blended(phi_ss_, is + 1);
  e.phi_t = (1.0 - xi) * blended(phi_t_, is) + xi * blended(phi_t_, is + 1);
  return e;
}

double Barrier::invert(double z, double t) const {
  const double lo = eval(0.0, t).phi;
  const double hi = eval(s_max(), t).phi;
  const double tol = 1e-9 * std::max({1.0, std::fabs(lo), std::fabs(hi)});
  if (z < lo - tol || z > hi + tol) {
    std::ostringstream os;
    os << "z = " << z << " outside the barrier range [" << lo << ", " << hi
       << "] at t = " << t << "; the range-containment hypothesis fails";
    throw Error::domain(os.str());
  }
  z = std::clamp(z, lo, hi);

  double a = 0.0, b = s_max();
  for (int it = 0; it < 200 && (b - a) > 1e-15 * std::max(1.0, s_max()); ++it) {
    const double mid = 0.5 * (a + b);
    if (eval(mid, t).phi < z)
      a = mid;
    else
      b = mid;
  }
  const double psi = 0.5 * (a + b);
  if (std::fabs(eval(psi, t).phi - z) > 1e-10)
    throw Error::domain("barrier inversion did not reach the required residual");
  return psi;
}

void Barrier::to_csv(std::ostream& out) const {
  out << "s,t,phi\n";
  char buf[3 * 32 + 8];
  const size_t ns = s_grid_.size();
  for (size_t j = 0; j < t_grid_.size(); ++j)
    for (size_t i = 0; i < ns; ++i) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", s_grid_[i], t_grid_[j],
                    phi_[j * ns + i]);
      out << buf;
    }
}

Barrier Barrier::from_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error::io("barrier CSV: empty stream");
  if (line != "s,t,phi" && line != "s,t,phi\r")
    throw Error::io("barrier CSV: expected header 's,t,phi'");
  std::vector<double> ss, ts, ps;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    double s, t, p;
    if (std::sscanf(line.c_str(), "%lg,%lg,%lg", &s, &t, &p) != 3)
      throw Error::io("barrier CSV: malformed row '" + line + "'");
    ss.push_back(s);
    ts.push_back(t);
    ps.push_back(p);
  }
  if (ss.empty()) throw Error::io("barrier CSV: no rows");

  auto unique_sorted = [](std::vector<double> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
  };
  const std::vector<double> s_grid = unique_sorted(ss);
  const std::vector<double> t_grid = unique_sorted(ts);
  if (ss.size() != s_grid.size() * t_grid.size())
    throw Error::io("barrier CSV: rows do not form a full s x t grid");

  auto index_of = [](const std::vector<double>& g, double v) {
    const auto it = std::lower_bound(g.begin(), g.end(), v);
    return static_cast<size_t>(it - g.begin());
  };
  std::vector<double> phi(ss.size(), std::numeric_limits<double>::quiet_NaN());
  for (size_t r = 0; r < ss.size(); ++r)
    phi[index_of(t_grid, ts[r]) * s_grid.size() + index_of(s_grid, ss[r])] = ps[r];
  for (double v : phi)
    if (std::isnan(v)) throw Error::io("barrier CSV: duplicate or missing grid cells");
  return from_samples(s_grid, t_grid, std::move(phi));
}

namespace {

// Rate of the eq16 construction at one column: alpha(phi') phi'' +
// kappa s |phi' (1 - beta(phi'))| + delta, with the shared difference stencils.
struct ColumnRates {
  std::vector<double> rate;
  std::vector<double> phi_s;
  double max_alpha = 0.0;
  double max_beta = 0.0;
};

ColumnRates column_rates(const CoefficientFamily& fam, double kappa, double delta,
                         const std::vector<double>& s_grid,
                         const std::vector<double>& phi, double h, double t) {
  ColumnRates out;
  out.phi_s = d_ds(phi, h);
  const auto phi_ss = d2_ds2(phi, h);
  out.rate.resize(phi.size());
  for (size_t i = 0; i < phi.size(); ++i) {
    const Coefficients c = fam.evaluate(phi[i], out.phi_s[i], t);
    // Grouped exactly as in verify_condition's eq16 right side, so the stored
    // rates certify the condition with residual == delta.
    const double rhs = c.alpha * phi_ss[i] +
                       kappa * s_grid[i] * std::fabs(out.phi_s[i] * (1.0 - c.beta));
    out.rate[i] = rhs + delta;
    out.max_alpha = std::max(out.max_alpha, c.alpha);
    out.max_beta = std::max(out.max_beta, c.beta);
  }
  return out;
}

}  // namespace

Barrier solve_barrier(const CoefficientFamily& fam, const CurvatureBounds& bounds,
                      const std::vector<double>& s_grid,
                      const std::vector<double>& phi0, double delta,
                      const std::vector<double>& t_grid, double cfl) {
  if (s_grid.size() < 8) throw Error::config("solve_barrier: need >= 8 s-nodes");
  if (phi0.size() != s_grid.size())
    throw Error::config("solve_barrier: phi0 must match the s-grid");
  for (size_t i = 0; i + 1 < phi0.size(); ++i)
    if (!(phi0[i] < phi0[i + 1]))
      throw Error::config("solve_barrier: phi0 must be strictly increasing");
  if (delta < 0.0) throw Error::config("solve_barrier: delta must be >= 0");
  if (t_grid.empty() || t_grid.front() < 0.0)
    throw Error::config("solve_barrier: t-grid must start at t >= 0");
  for (size_t j = 0; j + 1 < t_grid.size(); ++j)
    if (!(t_grid[j] < t_grid[j + 1]))
      throw Error::config("solve_barrier: t-grid must be increasing");
  if (!(cfl > 0.0) || cfl > 1.0) throw Error::config("cfl factor must lie in (0, 1]");

  const double h = require_uniform_spacing(s_grid, "solve_barrier s-grid");
  const double kappa = bounds.kappa;
  const size_t ns = s_grid.size();

  std::vector<double> phi_table, rate_table;
  phi_table.reserve(ns * t_grid.size());
  rate_table.reserve(ns * t_grid.size());

  std::vector<double> cur = phi0;
  double t = t_grid.front();

  auto emit_column = [&](double tc) {
    const ColumnRates cr = column_rates(fam, kappa, delta, s_grid, cur, h, tc);
    for (size_t i = 0; i < ns; ++i)
      if (!(cr.phi_s[i] > 0.0)) {
        std::ostringstream os;
        os << "barrier construction lost monotonicity at t = " << tc
           << " (phi' = " << cr.phi_s[i] << " at s = " << s_grid[i] << ")";
        throw Error::domain(os.str());
      }
    phi_table.insert(phi_table.end(), cur.begin(), cur.end());
    rate_table.insert(rate_table.end(), cr.rate.begin(), cr.rate.end());
  };

  emit_column(t);
  for (size_t j = 1; j < t_grid.size(); ++j) {
    const double target = t_grid[j];
    while (t < target - 1e-14 * std::max(1.0, target)) {
      const ColumnRates cr = column_rates(fam, kappa, delta, s_grid, cur, h, t);
      double dt = target - t;
      if (cr.max_alpha > 0.0) dt = std::min(dt, cfl * h * h / (2.0 * cr.max_alpha));
      if (kappa > 0.0)
        dt = std::min(dt, cfl * h / (kappa * s_grid.back() *
                                     (1.0 + cr.max_alpha + cr.max_beta)));
      for (size_t i = 1; i + 1 < ns; ++i) cur[i] += dt * cr.rate[i];
      // End nodes integrate the cubic extrapolation of the interior rates:
      // no self-coupling (stable) and the forcing delta carries through with
      // weight 4 - 6 + 4 - 1 = 1.
      cur[0] += dt * (4.0 * cr.rate[1] - 6.0 * cr.rate[2] + 4.0 * cr.rate[3] -
                      cr.rate[4]);
      cur[ns - 1] += dt * (4.0 * cr.rate[ns - 2] - 6.0 * cr.rate[ns - 3] +
                           4.0 * cr.rate[ns - 4] - cr.rate[ns - 5]);
      for (size_t i = 0; i < ns; ++i)
        if (!std::isfinite(cur[i]))
          throw Error::divergence("barrier construction diverged");
      t += dt;
      if (std::fabs(t - target) <= 1e-14 * std::max(1.0, target)) t = target;
    }
    t = target;
    emit_column(t);
  }

  Barrier b;
  b.kind_ = BarrierKind::tabulated;
  b.s_grid_ = s_grid;
  b.t_grid_ = t_grid;
  b.phi_ = std::move(phi_table);
  b.phi_t_ = std::move(rate_table);
  b.build_tables();
  b.validate_monotone();
  return b;
}

ConditionReport verify_condition(const Barrier& barrier, const CoefficientFamily& fam,
                                 ConditionMode mode, const CurvatureBounds& bounds,
                                 double margin) {
  if (margin < 0.0) throw Error::config("condition margin must be >= 0");
  if (mode == ConditionMode::parabolic_thm14 && !fam.beta_time_only_ge1())
    throw Error::hypothesis(fam.name() +
                            " is not admissible for Theorem 1.4 checks: beta(t) >= 1 required");

  const auto& s_grid = barrier.s_grid();
  const auto& t_grid = barrier.t_grid();
  const size_t ns = s_grid.size();
  const double h = ns > 1 ? s_grid[1] - s_grid[0] : 1.0;

  ConditionReport report;
  report.mode = mode;
  report.margin = margin;
  report.rows.reserve(ns * t_grid.size());

  const bool minimizing = (mode == ConditionMode::parabolic_eq16);
  double worst = minimizing ? std::numeric_limits<double>::infinity()
                            : -std::numeric_limits<double>::infinity();
  size_t worst_i = 0, worst_j = 0;

  std::vector<double> quotient(ns);
  for (size_t j = 0; j < t_grid.size(); ++j) {
    const double t = t_grid[j];
    std::vector<double> residual(ns);

    if (mode == ConditionMode::parabolic_eq16) {
      for (size_t i = 0; i < ns; ++i) {
        const BarrierEval e = barrier.at_node(static_cast<int>(i), static_cast<int>(j));
        if (!(e.phi_s > 0.0)) throw Error::domain("phi' <= 0: barrier monotonicity violated");
        const Coefficients c = fam.evaluate(e.phi, e.phi_s, t);
        const double rhs = c.alpha * e.phi_ss +
                           bounds.kappa * s_grid[i] * std::fabs(e.phi_s * (1.0 - c.beta));
        residual[i] = e.phi_t - rhs;
      }
    } else {
      for (size_t i = 0; i < ns; ++i) {
        const BarrierEval e = barrier.at_node(static_cast<int>(i), static_cast<int>(j));
        if (!(e.phi_s > 0.0)) throw Error::domain("phi' <= 0: barrier monotonicity violated");
        const Coefficients c = fam.evaluate(e.phi, e.phi_s, t);
        if (c.beta == 0.0) throw Error::domain("division by zero: beta = 0");
        const double numerator = mode == ConditionMode::parabolic_thm14
                                     ? e.phi_t - e.phi_ss * c.alpha + c.q
                                     : e.phi_ss * c.alpha + c.q;
        quotient[i] = numerator / (e.phi_s * c.beta);
      }
      residual = d_ds(quotient, h);
    }

    for (size_t i = 0; i < ns; ++i) {
      report.rows.push_back(ConditionRow{s_grid[i], t, residual[i]});
      const bool better = minimizing ? residual[i] < worst : residual[i] > worst;
      if (better) {
        worst = residual[i];
        worst_i = i;
        worst_j = j;
      }
    }
  }

  report.worst = worst;
  report.worst_s = s_grid[worst_i];
  report.worst_t = t_grid[worst_j];
  report.pass = minimizing ? (worst >= margin) : (worst < -margin);
  return report;
}

}  // namespace twopoint

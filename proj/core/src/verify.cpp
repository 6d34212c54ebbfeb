#include "twopoint/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <thread>

#include "twopoint/errors.hpp"
#include "twopoint/solver.hpp"

namespace twopoint {

const char* to_string(TwoPointMode mode) {
  return mode == TwoPointMode::psi_form ? "psi_form" : "modulus_form";
}

const char* to_string(GradientMode mode) {
  return mode == GradientMode::cor15 ? "cor15" : "cor17";
}

namespace {

struct PairBest {
  double value = -std::numeric_limits<double>::infinity();
  int xi = std::numeric_limits<int>::max();
  int yi = std::numeric_limits<int>::max();
};

// Total order: larger value wins, ties go to the lexicographically smallest
// index pair. Using a total order makes the parallel reduction independent of
// the work partition.
bool better(const PairBest& a, const PairBest& b) {
  if (a.value != b.value) return a.value > b.value;
  if (a.xi != b.xi) return a.xi < b.xi;
  return a.yi < b.yi;
}

void consider(PairBest& best, double value, int xi, int yi) {
  const PairBest cand{value, xi, yi};
  if (better(cand, best)) best = cand;
}

// Worst two-point value over all ordered pairs at one snapshot. `values` is
// Psi(u) for the psi form and u itself for the modulus form.
PairBest pair_worst(const ScalarField& field, const Barrier& barrier,
                    TwoPointMode mode, const std::vector<double>& values,
                    int threads) {
  const int n = static_cast<int>(values.size());
  const double t = field.t;
  threads = std::max(1, std::min(threads, n));

  auto scan_rows = [&](int tid) {
    PairBest best;
    for (int i = tid; i < n; i += threads) {
      const Point pi = field.grid.node(i);
      for (int j = i; j < n; ++j) {
        const double d = field.geom.distance(pi, field.grid.node(j), t);
        if (mode == TwoPointMode::psi_form) {
          consider(best, values[j] - values[i] - d, i, j);
          consider(best, values[i] - values[j] - d, j, i);
        } else {
          const double bound = 2.0 * barrier.eval(0.5 * d, t).phi;
          consider(best, values[j] - values[i] - bound, i, j);
          consider(best, values[i] - values[j] - bound, j, i);
        }
      }
    }
    return best;
  };

  if (threads == 1) return scan_rows(0);

  std::vector<PairBest> partial(threads);
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int tid = 0; tid < threads; ++tid)
    pool.emplace_back([&, tid] { partial[tid] = scan_rows(tid); });
  for (auto& th : pool) th.join();
  PairBest best;
  for (const PairBest& p : partial)
    if (better(p, best)) best = p;
  return best;
}

std::vector<double> psi_of(const ScalarField& field, const Barrier& barrier) {
  std::vector<double> psi(field.values.size());
  for (size_t i = 0; i < psi.size(); ++i)
    psi[i] = barrier.invert(field.values[i], field.t);
  return psi;
}

SnapshotWorst snapshot_worst(const ScalarField& field, const Barrier& barrier,
                             TwoPointMode mode, int threads) {
  const std::vector<double> values =
      mode == TwoPointMode::psi_form ? psi_of(field, barrier) : field.values;
  const PairBest best = pair_worst(field, barrier, mode, values, threads);
  return SnapshotWorst{field.t, best.value, best.xi, best.yi};
}

void require_psi_hypotheses(const ScalarField& state, const CoefficientFamily& fam,
                            double t0, double t1) {
  if (!fam.beta_time_only_ge1())
    throw Error::hypothesis(fam.name() +
                            " is not admissible for the psi-form check: beta(t) >= 1 required");
  const CurvatureBounds bounds = state.geom.curvature_bounds(t0, t1);
  if (bounds.k0 > 0.0)
    throw Error::hypothesis("psi-form check requires Ric >= 0 on the time interval");
}

}  // namespace

TwoPointReport initial_containment(const ScalarField& u0, const Barrier& barrier,
                                   TwoPointMode mode, double tol, int threads) {
  TwoPointReport report;
  report.mode = mode;
  report.tol = tol;
  const SnapshotWorst w = snapshot_worst(u0, barrier, mode, threads);
  report.per_snapshot.push_back(w);
  report.worst = w.worst;
  report.worst_t = w.t;
  report.worst_xi = w.xi;
  report.worst_yi = w.yi;
  report.pass = w.worst <= tol;
  return report;
}

TwoPointReport two_point_check(const Trajectory& traj, const Barrier& barrier,
                               TwoPointMode mode, const CoefficientFamily& fam,
                               double tol, int threads) {
  if (traj.snapshots.empty()) throw Error::config("empty trajectory");
  const double t0 = traj.snapshots.front().t;
  const double t1 = traj.snapshots.back().t;
  if (mode == TwoPointMode::psi_form)
    require_psi_hypotheses(traj.snapshots.front(), fam, t0, t1);

  TwoPointReport report;
  report.mode = mode;
  report.tol = tol;
  PairBest global;
  size_t global_snapshot = 0;
  for (size_t k = 0; k < traj.snapshots.size(); ++k) {
    const SnapshotWorst w = snapshot_worst(traj.snapshots[k], barrier, mode, threads);
    report.per_snapshot.push_back(w);
    const PairBest cand{w.worst, w.xi, w.yi};
    if (k == 0 || cand.value > global.value) {
      global = cand;
      global_snapshot = k;
    }
  }
  report.worst = global.value;
  report.worst_t = traj.snapshots[global_snapshot].t;
  report.worst_xi = global.xi;
  report.worst_yi = global.yi;
  report.pass = report.worst <= tol;
  return report;
}

GradientReport gradient_check(const Trajectory& traj, const Barrier& barrier,
                              GradientMode mode, double tol_ratio) {
  if (traj.snapshots.empty()) throw Error::config("empty trajectory");
  GradientReport report;
  report.mode = mode;
  report.tol_ratio = tol_ratio;
  report.worst_ratio = -std::numeric_limits<double>::infinity();
  for (const ScalarField& field : traj.snapshots) {
    const std::vector<double> grads = gradient_norm(field);
    const double bound17 =
        mode == GradientMode::cor17 ? barrier.eval(0.0, field.t).phi_s : 0.0;
    for (size_t i = 0; i < grads.size(); ++i) {
      double bound = bound17;
      if (mode == GradientMode::cor15) {
        const double psi = barrier.invert(field.values[i], field.t);
        bound = barrier.eval(psi, field.t).phi_s;
      }
      if (!(bound > 0.0))
        throw Error::domain("gradient bound phi' is not positive");
      const double ratio = grads[i] / bound;
      report.rows.push_back(
          GradientRow{field.t, static_cast<int>(i), grads[i], bound, ratio});
      if (ratio > report.worst_ratio) {
        report.worst_ratio = ratio;
        report.worst_t = field.t;
        report.worst_node = static_cast<int>(i);
      }
    }
  }
  report.pass = report.worst_ratio <= 1.0 + tol_ratio;
  return report;
}

double liyau_rhs(const LiYauParams& params, double t) {
  const double a = params.alpha_ly;
  const double n = params.n;
  return n * a * a / t + n * a * a * a * params.k0 / (a - 1.0) +
         n * std::sqrt(n) * a * a * (params.k0 + params.k1);
}

LiYauReport liyau_check(const Trajectory& traj, const CoefficientFamily& fam,
                        const LiYauParams& params, double tol) {
  if (traj.snapshots.empty()) throw Error::config("empty trajectory");
  if (!(params.alpha_ly > 1.0)) throw Error::config("alpha must exceed 1");
  if (fam.family() != EquationFamily::heat)
    throw Error::hypothesis("the Li-Yau check requires the heat family");
  const GeometryFamily gf = traj.snapshots.front().geom.family();
  if (gf == GeometryFamily::sphere_static)
    throw Error::hypothesis(
        "the Li-Yau check requires a Ricci flow: sphere_static is a supersolution only");

  LiYauReport report;
  report.tol = tol;
  report.worst = -std::numeric_limits<double>::infinity();
  bool any = false;
  for (const ScalarField& field : traj.snapshots) {
    for (double v : field.values)
      if (!(v > 0.0)) throw Error::domain("Li-Yau check requires u > 0 everywhere");
    if (!(field.t > 0.0)) continue;  // the bound blows up at t = 0
    any = true;
    const std::vector<double> grads = gradient_norm(field);
    const std::vector<double> ut = metric_laplacian(field);
    const double rhs = liyau_rhs(params, field.t);
    for (size_t i = 0; i < grads.size(); ++i) {
      const double u = field.values[i];
      const double lhs =
          grads[i] * grads[i] / (u * u) - params.alpha_ly * ut[i] / u;
      report.rows.push_back(
          LiYauRow{field.t, static_cast<int>(i), lhs, rhs, rhs - lhs});
      if (lhs - rhs > report.worst) {
        report.worst = lhs - rhs;
        report.worst_t = field.t;
        report.worst_node = static_cast<int>(i);
      }
    }
  }
  if (!any)
    throw Error::config("Li-Yau check needs at least one snapshot with t > 0");
  report.pass = report.worst <= tol;
  return report;
}

}  // namespace twopoint

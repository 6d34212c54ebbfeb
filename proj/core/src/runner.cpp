#include "twopoint/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "twopoint/errors.hpp"
#include "twopoint/solver.hpp"

namespace twopoint {

namespace {

namespace fs = std::filesystem;

std::string g(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error::io("cannot open '" + path + "' for writing");
  return out;
}

std::vector<double> uniform(double max_value, int nodes) {
  std::vector<double> v(nodes);
  for (int i = 0; i < nodes; ++i) v[i] = nodes == 1 ? 0.0 : max_value * i / (nodes - 1);
  return v;
}

ScalarField build_initial(const ExperimentConfig& cfg, const Geometry& geom) {
  const Profile prof = cfg.initial;
  return ScalarField::sample(geom, cfg.n, [&](Point p) {
    return geom.family() == GeometryFamily::torus2 ? prof.eval2d(p.a, p.b)
                                                   : prof.eval1d(p.a);
  });
}

Barrier build_barrier(const ExperimentConfig& cfg, const Geometry& geom,
                      const CoefficientFamily& fam, const CurvatureBounds& bounds) {
  const double s_max = cfg.resolved_s_max(geom);
  const double t_max = cfg.t_end;
  const int ns = cfg.barrier_s_nodes;
  const int nt = cfg.resolved_t_nodes();
  switch (cfg.barrier_source) {
    case BarrierSource::analytic: {
      const Profile& d = *cfg.barrier_analytic;
      switch (d.form) {
        case Profile::Form::linear:
          return Barrier::linear(d.p0, d.p1, d.p2, s_max, t_max, ns, nt);
        case Profile::Form::sine:
          return Barrier::sine(d.p0, d.p1, s_max, t_max, ns, nt);
        case Profile::Form::exp_sine:
          return Barrier::exp_sine(d.p0, d.p1, d.p2, s_max, t_max, ns, nt);
        default:
          throw Error::config("analytic barrier descriptor must be linear, sin or exp_sin");
      }
    }
    case BarrierSource::solve: {
      const std::vector<double> s_grid = uniform(s_max, ns);
      std::vector<double> phi0(s_grid.size());
      for (size_t i = 0; i < s_grid.size(); ++i)
        phi0[i] = cfg.barrier_phi0->eval1d(s_grid[i]);
      return solve_barrier(fam, bounds, s_grid, phi0, cfg.delta,
                           uniform(t_max, std::max(nt, 2)), cfg.c_cfl);
    }
    case BarrierSource::csv: {
      std::ifstream in(cfg.barrier_csv);
      if (!in) throw Error::io("cannot open barrier CSV '" + cfg.barrier_csv + "'");
      return Barrier::from_csv(in);
    }
  }
  throw Error::config("unknown barrier kind");
}

double default_two_point_tol(const ScalarField& u0, const CoefficientFamily& fam,
                             double c_cfl) {
  double radius = 1.0;
  if (u0.grid.kind == GridKind::sphere_latitude) radius = u0.geom.radius(u0.t);
  const double h = u0.grid.metric_spacing(radius);
  const double dt = cfl_dt(u0, fam, c_cfl);
  double lip = 1.0;
  for (double v : gradient_norm(u0)) lip = std::max(lip, v);
  return 10.0 * (h + dt) * lip;
}

void write_effective_config(const ExperimentConfig& cfg, const std::string& dir) {
  auto out = open_out(dir + "/effective_config.ini");
  out << cfg.serialize();
}

}  // namespace

std::string resolve_output_dir(const ExperimentConfig& cfg) {
  if (const char* env = std::getenv("TWOPOINT_OUT_DIR"); env && *env) return env;
  return cfg.output_dir;
}

void emit_report(const TwoPointReport& report, const std::string& path) {
  auto out = open_out(path);
  out << "t,worst,xi,yi\n";
  for (const SnapshotWorst& row : report.per_snapshot)
    out << g(row.t) << "," << g(row.worst) << "," << row.xi << "," << row.yi << "\n";
}

void emit_report(const GradientReport& report, const std::string& path) {
  auto out = open_out(path);
  out << "t,node,grad,bound,ratio\n";
  for (const GradientRow& row : report.rows)
    out << g(row.t) << "," << row.node << "," << g(row.grad) << "," << g(row.bound)
        << "," << g(row.ratio) << "\n";
}

void emit_report(const LiYauReport& report, const std::string& path) {
  auto out = open_out(path);
  out << "t,node,lhs,rhs,margin\n";
  for (const LiYauRow& row : report.rows)
    out << g(row.t) << "," << row.node << "," << g(row.lhs) << "," << g(row.rhs) << ","
        << g(row.margin) << "\n";
}

void emit_report(const ConditionReport& report, const std::string& path) {
  auto out = open_out(path);
  out << "s,t,residual\n";
  for (const ConditionRow& row : report.rows)
    out << g(row.s) << "," << g(row.t) << "," << g(row.residual) << "\n";
}

void emit_summary(const std::vector<SummaryRow>& rows, const std::string& path) {
  auto out = open_out(path);
  out << "check,pass,worst,tol\n";
  for (const SummaryRow& row : rows)
    out << row.check << "," << (row.pass ? 1 : 0) << "," << g(row.worst) << ","
        << g(row.tol) << "\n";
}

void emit_sensitivity(const std::vector<SensitivityRow>& rows, const std::string& path) {
  auto out = open_out(path);
  out << "epsilon,check,worst\n";
  for (const SensitivityRow& row : rows)
    out << g(row.epsilon) << "," << row.check << "," << g(row.worst) << "\n";
}

RunResult run_experiment(const ExperimentConfig& cfg, const RunnerOptions& opts) {
  RunResult result;
  result.output_dir = resolve_output_dir(cfg);
  fs::create_directories(result.output_dir);
  write_effective_config(cfg, result.output_dir);
  const std::string dir = result.output_dir + "/";

  const Geometry geom = cfg.make_geometry();
  const CoefficientFamily fam = cfg.make_family();
  const ScalarField u0 = build_initial(cfg, geom);
  const CurvatureBounds bounds = geom.curvature_bounds(0.0, cfg.t_end);

  const bool want_psi = cfg.has_check(CheckKind::two_point_psi);
  const bool want_modulus = cfg.has_check(CheckKind::two_point_modulus);
  const bool want_grad =
      cfg.has_check(CheckKind::grad_cor15) || cfg.has_check(CheckKind::grad_cor17);
  const bool dependent = want_psi || want_modulus || want_grad;
  const TwoPointMode mode = want_modulus ? TwoPointMode::modulus_form
                            : want_psi   ? TwoPointMode::psi_form
                            : cfg.resolved_condition_mode() == ConditionMode::parabolic_eq16
                                ? TwoPointMode::modulus_form
                                : TwoPointMode::psi_form;

  std::optional<Barrier> barrier;
  if (cfg.has_barrier) {
    barrier = build_barrier(cfg, geom, fam, bounds);
    if (cfg.barrier_source == BarrierSource::solve) {
      auto out = open_out(dir + "barrier.csv");
      barrier->to_csv(out);
    }
  }

  bool hypotheses_ok = true;

  // Barrier verification comes first: the two-point conclusions are only
  // claimed under a certified barrier condition.
  if (barrier && (cfg.has_check(CheckKind::barrier_condition) || dependent ||
                  cfg.has_check(CheckKind::containment))) {
    const ConditionReport report = verify_condition(
        *barrier, fam, cfg.resolved_condition_mode(), bounds, cfg.resolved_margin());
    emit_report(report, dir + "barrier_condition.csv");
    result.summary.push_back(
        SummaryRow{"barrier_condition", report.pass, report.worst, cfg.resolved_margin()});
    if (!report.pass) {
      hypotheses_ok = false;
      result.notes.push_back(
          "barrier condition failed; dependent two-point/gradient checks skipped");
    }
  }

  const double tp_tol =
      cfg.tol_two_point ? *cfg.tol_two_point : default_two_point_tol(u0, fam, cfg.c_cfl);

  bool containment_ok = true;
  if (barrier && hypotheses_ok &&
      (cfg.has_check(CheckKind::containment) || want_psi || want_modulus)) {
    const TwoPointReport report =
        initial_containment(u0, *barrier, mode, tp_tol, opts.threads);
    emit_report(report, dir + "containment.csv");
    result.summary.push_back(SummaryRow{"containment", report.pass, report.worst, tp_tol});
    if (!report.pass) {
      containment_ok = false;
      result.notes.push_back(
          "initial containment failed; dependent two-point/gradient checks skipped");
    }
  }

  std::optional<Trajectory> traj;
  if (cfg.needs_trajectory())
    traj = evolve(u0, fam, cfg.t_end, cfg.snapshot_times(), StepControls{cfg.c_cfl});

  const bool gates_open = hypotheses_ok && containment_ok;

  if ((want_psi || want_modulus) && gates_open) {
    const TwoPointReport report =
        two_point_check(*traj, *barrier, mode, fam, tp_tol, opts.threads);
    const std::string name = want_psi ? "two_point_psi" : "two_point_modulus";
    emit_report(report, dir + name + ".csv");
    result.summary.push_back(SummaryRow{name, report.pass, report.worst, tp_tol});
  }

  if (cfg.has_check(CheckKind::grad_cor15) && gates_open) {
    const GradientReport report =
        gradient_check(*traj, *barrier, GradientMode::cor15, cfg.tol_ratio);
    emit_report(report, dir + "grad_cor15.csv");
    result.summary.push_back(
        SummaryRow{"grad_cor15", report.pass, report.worst_ratio, 1.0 + cfg.tol_ratio});
  }
  if (cfg.has_check(CheckKind::grad_cor17) && gates_open) {
    const GradientReport report =
        gradient_check(*traj, *barrier, GradientMode::cor17, cfg.tol_ratio);
    emit_report(report, dir + "grad_cor17.csv");
    result.summary.push_back(
        SummaryRow{"grad_cor17", report.pass, report.worst_ratio, 1.0 + cfg.tol_ratio});
  }

  if (cfg.has_check(CheckKind::liyau)) {
    const LiYauParams params{cfg.alpha_ly, bounds.k0, bounds.k1, geom.dimension()};
    const LiYauReport report = liyau_check(*traj, fam, params, cfg.tol_liyau);
    emit_report(report, dir + "liyau.csv");
    result.summary.push_back(SummaryRow{"liyau", report.pass, report.worst, cfg.tol_liyau});
  }

  // Regularization sensitivity: rerun the pipeline per epsilon and record the
  // worst two-point value (the solutions of interest are viscosity solutions,
  // so the report shows how strongly the split regularization matters).
  if (!cfg.epsilon_sweep.empty() && (want_psi || want_modulus) && gates_open) {
    const std::string name = want_psi ? "two_point_psi" : "two_point_modulus";
    for (double eps : cfg.epsilon_sweep) {
      const CoefficientFamily fam_eps = cfg.make_family(eps);
      Barrier barrier_eps = cfg.barrier_source == BarrierSource::solve
                                ? build_barrier(cfg, geom, fam_eps, bounds)
                                : *barrier;
      const Trajectory traj_eps =
          evolve(u0, fam_eps, cfg.t_end, cfg.snapshot_times(), StepControls{cfg.c_cfl});
      const TwoPointReport report =
          two_point_check(traj_eps, barrier_eps, mode, fam_eps, tp_tol, opts.threads);
      result.sensitivity.push_back(SensitivityRow{eps, name, report.worst});
    }
    emit_sensitivity(result.sensitivity, dir + "sensitivity.csv");
  }

  bool all_pass = true;
  for (const SummaryRow& row : result.summary) all_pass = all_pass && row.pass;
  emit_summary(result.summary, dir + "summary.csv");
  result.exit_code = all_pass && hypotheses_ok && containment_ok ? 0 : 1;
  return result;
}

RunResult run_barrier_check(const ExperimentConfig& cfg, const RunnerOptions&) {
  if (!cfg.has_barrier) throw Error::config("barrier check needs a [barrier] section");
  RunResult result;
  result.output_dir = resolve_output_dir(cfg);
  fs::create_directories(result.output_dir);
  write_effective_config(cfg, result.output_dir);
  const std::string dir = result.output_dir + "/";

  const Geometry geom = cfg.make_geometry();
  const CoefficientFamily fam = cfg.make_family();
  const CurvatureBounds bounds = geom.curvature_bounds(0.0, cfg.t_end);
  const Barrier barrier = build_barrier(cfg, geom, fam, bounds);

  const ConditionReport report = verify_condition(
      barrier, fam, cfg.resolved_condition_mode(), bounds, cfg.resolved_margin());
  emit_report(report, dir + "barrier_condition.csv");
  result.summary.push_back(
      SummaryRow{"barrier_condition", report.pass, report.worst, cfg.resolved_margin()});
  emit_summary(result.summary, dir + "summary.csv");
  result.exit_code = report.pass ? 0 : 1;
  return result;
}

RunResult run_barrier_solve(const ExperimentConfig& cfg, const RunnerOptions&) {
  if (!cfg.has_barrier || cfg.barrier_source != BarrierSource::solve)
    throw Error::config("barrier solve needs [barrier] kind = solve");
  RunResult result;
  result.output_dir = resolve_output_dir(cfg);
  fs::create_directories(result.output_dir);
  write_effective_config(cfg, result.output_dir);
  const std::string dir = result.output_dir + "/";

  const Geometry geom = cfg.make_geometry();
  const CoefficientFamily fam = cfg.make_family();
  const CurvatureBounds bounds = geom.curvature_bounds(0.0, cfg.t_end);
  const Barrier barrier = build_barrier(cfg, geom, fam, bounds);
  {
    auto out = open_out(dir + "barrier.csv");
    barrier.to_csv(out);
  }

  const ConditionReport report =
      verify_condition(barrier, fam, ConditionMode::parabolic_eq16, bounds,
                       cfg.margin.value_or(0.5 * cfg.delta));
  emit_report(report, dir + "barrier_condition.csv");
  result.summary.push_back(SummaryRow{"barrier_condition", report.pass, report.worst,
                                      cfg.margin.value_or(0.5 * cfg.delta)});
  emit_summary(result.summary, dir + "summary.csv");
  result.exit_code = report.pass ? 0 : 1;
  return result;
}

}  // namespace twopoint

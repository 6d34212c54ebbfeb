#ifndef TWOPOINT_CONFIG_HPP
#define TWOPOINT_CONFIG_HPP

#include <optional>
#include <string>
#include <vector>

#include "twopoint/barrier.hpp"
#include "twopoint/equations.hpp"
#include "twopoint/geometry.hpp"

namespace twopoint {

/// Small closed-form profile descriptors used for initial data, analytic
/// barriers and barrier seed profiles. Text form: name(p0, p1, ...).
///   const(c)                      c
///   sin(amp, freq, offset)        amp sin(freq x) + offset
///   cos(amp, freq, offset)        amp cos(freq x) + offset
///   product_sin(amp, kx, ky, off) amp sin(kx x) sin(ky y) + off
///   linear(a, b, c)               a s + b t + c
///   exp_sin(amp, rate, freq)      amp exp(-rate t) sin(freq s)
struct Profile {
  enum class Form { constant, sine, cosine, product_sine, linear, exp_sine };
  Form form = Form::constant;
  double p0 = 0.0, p1 = 0.0, p2 = 0.0, p3 = 0.0;

  static Profile parse(const std::string& text);
  std::string describe() const;

  /// Value at a single chart coordinate (t = 0 for time-dependent forms).
  double eval1d(double x) const;
  double eval2d(double x, double y) const;
};

enum class CheckKind {
  barrier_condition,
  containment,
  two_point_psi,
  two_point_modulus,
  grad_cor15,
  grad_cor17,
  liyau,
};

const char* to_string(CheckKind kind);

enum class BarrierSource { analytic, solve, csv };

/// A fully validated experiment description. parse_config() fills every
/// documented default; unknown keys are errors.
struct ExperimentConfig {
  // [geometry]
  GeometryFamily geometry_family = GeometryFamily::circle;
  double circle_length = 6.283185307179586;
  double torus_lx = 1.0;
  double torus_ly = 1.0;
  double r0 = 1.0;

  // [equation]
  EquationFamily equation_family = EquationFamily::heat;
  double p = 2.0;
  double epsilon_reg = CoefficientFamily::kDefaultEpsilonReg;
  std::optional<EquationForm> form;
  std::vector<double> epsilon_sweep;
  std::vector<double> table_s, table_alpha, table_beta, table_q;

  // [grid]
  int n = 128;

  // [time]
  double t_end = 0.1;
  int snapshots = 11;
  double snap_start = 0.0;
  double c_cfl = 0.4;

  // [initial]
  Profile initial;

  // [barrier]
  bool has_barrier = false;
  BarrierSource barrier_source = BarrierSource::analytic;
  std::optional<Profile> barrier_analytic;
  std::optional<Profile> barrier_phi0;
  double delta = 0.0;
  std::optional<double> margin;
  std::optional<ConditionMode> condition_mode;
  std::optional<double> barrier_s_max;
  int barrier_s_nodes = 257;
  int barrier_t_nodes = 0;  // 0 = derived from the snapshot spacing
  std::string barrier_csv;

  // [checks]
  std::vector<CheckKind> checks;

  // [liyau]
  double alpha_ly = 2.0;

  // [tolerances]
  std::optional<double> tol_two_point;
  double tol_ratio = 0.02;
  double tol_liyau = 0.0;

  // [output]
  std::string output_dir = "out";

  bool has_check(CheckKind kind) const;
  bool needs_barrier() const;
  bool needs_trajectory() const;

  Geometry make_geometry() const;
  CoefficientFamily make_family(std::optional<double> epsilon_override = {}) const;
  std::vector<double> snapshot_times() const;

  double resolved_s_max(const Geometry& geom) const;
  int resolved_t_nodes() const;
  ConditionMode resolved_condition_mode() const;
  double resolved_margin() const;

  /// Canonical text form; parse(serialize()) reproduces this config.
  std::string serialize() const;
};

/// Parses the documented line-oriented format. Throws a config error carrying
/// either a syntax error with its line number or the consolidated list of all
/// key/semantic violations.
ExperimentConfig parse_config(const std::string& text);

}  // namespace twopoint

#endif  // TWOPOINT_CONFIG_HPP

#ifndef TWOPOINT_BARRIER_HPP
#define TWOPOINT_BARRIER_HPP

#include <iosfwd>
#include <vector>

#include "twopoint/equations.hpp"
#include "twopoint/geometry.hpp"

namespace twopoint {

/// phi(s, t), phi' = d/ds, phi'' = d^2/ds^2, phi_t = d/dt.
struct BarrierEval {
  double phi = 0.0;
  double phi_s = 0.0;
  double phi_ss = 0.0;
  double phi_t = 0.0;
};

enum class BarrierKind { linear, sine, exp_sine, tabulated };

/// Barrier conditions:
///   elliptic_1_3:     d/ds ( (phi'' a + q) / (phi' b) ) < 0
///   parabolic_thm14:  d/ds ( (phi_t - phi'' a + q) / (phi' b(t)) ) < 0
///   parabolic_eq16:   phi_t >= phi'' a + kappa s |phi' (1 - b)|
/// The two quotient conditions are strict; they are certified with a positive
/// margin. The eq16 inequality is non-strict.
enum class ConditionMode { elliptic_1_3, parabolic_thm14, parabolic_eq16 };

const char* to_string(ConditionMode mode);
const char* to_string(BarrierKind kind);

struct ConditionRow {
  double s = 0.0;
  double t = 0.0;
  double residual = 0.0;
};

struct ConditionReport {
  ConditionMode mode = ConditionMode::parabolic_eq16;
  double margin = 0.0;
  double worst = 0.0;   // max of d/ds(quotient) for strict modes, min residual for eq16
  double worst_s = 0.0;
  double worst_t = 0.0;
  bool pass = false;
  std::vector<ConditionRow> rows;  // time-major
};

/// A barrier profile phi : [0, s_max] x [t0, t_max] -> R with phi' > 0 at
/// every grid node and a monotone inverse Psi.
///
/// Analytic kinds evaluate derivatives in closed form (the grid only anchors
/// condition checks). Tabulated barriers interpolate cubically in s and
/// linearly in t; node derivatives come from centered differences, except
/// that solve_barrier stores the exact construction rates as phi_t.
class Barrier {
 public:
  /// phi = slope * s + time_slope * t + offset.
  static Barrier linear(double slope, double time_slope, double offset,
                        double s_max, double t_max, int s_nodes, int t_nodes);

  /// phi = amp * sin(freq * s), static in time.
  static Barrier sine(double amp, double freq, double s_max, double t_max,
                      int s_nodes, int t_nodes);

  /// phi = amp * exp(-rate * t) * sin(freq * s).
  static Barrier exp_sine(double amp, double rate, double freq, double s_max,
                          double t_max, int s_nodes, int t_nodes);

  /// Tabulated phi over s_grid x t_grid (time-major values); derivatives by
  /// centered differences, second-order one-sided at the edges.
  static Barrier from_samples(std::vector<double> s_grid, std::vector<double> t_grid,
                              std::vector<double> phi);

  /// CSV with header "s,t,phi", rows time-major. Full-precision round trip.
  static Barrier from_csv(std::istream& in);
  void to_csv(std::ostream& out) const;

  BarrierKind kind() const { return kind_; }
  bool analytic() const { return kind_ != BarrierKind::tabulated; }

  const std::vector<double>& s_grid() const { return s_grid_; }
  const std::vector<double>& t_grid() const { return t_grid_; }
  double s_max() const { return s_grid_.back(); }
  double t_min() const { return t_grid_.front(); }
  double t_max() const { return t_grid_.back(); }

  BarrierEval eval(double s, double t) const;
  BarrierEval at_node(int i_s, int j_t) const;

  /// Psi(z, t): the s with phi(s, t) = z, by bisection to residual <= 1e-10.
  /// z outside [phi(0,t), phi(s_max,t)] is a range error (the containment
  /// hypothesis on the range of u fails).
  double invert(double z, double t) const;

 private:
  friend Barrier solve_barrier(const CoefficientFamily&, const CurvatureBounds&,
                               const std::vector<double>&, const std::vector<double>&,
                               double, const std::vector<double>&, double);

  Barrier() = default;
  void build_tables();
  void validate_monotone() const;
  BarrierEval closed_form(double s, double t) const;

  BarrierKind kind_ = BarrierKind::tabulated;
  double a_ = 0.0, b_ = 0.0, c_ = 0.0;  // closed-form parameters
  std::vector<double> s_grid_, t_grid_;
  // node tables, time-major: index = j_t * s_nodes + i_s
  std::vector<double> phi_, phi_s_, phi_ss_, phi_t_;
};

/// Checks the mode's inequality at every grid node. The quotient modes take
/// the s-derivative by centered differences; pass requires the strict
/// inequality to hold with at least `margin` slack everywhere (eq16 passes
/// non-strictly at `margin`).
ConditionReport verify_condition(const Barrier& barrier, const CoefficientFamily& fam,
                                 ConditionMode mode, const CurvatureBounds& bounds,
                                 double margin);

/// Integrates phi_t = phi'' alpha(phi', t) + kappa s |phi' (1 - beta(phi', t))| + delta
/// from the strictly increasing profile phi0, storing a column at every
/// t_grid entry. End nodes integrate the one-sided cubic extrapolation of the
/// interior rates, which keeps the end slopes monotone without boundary
/// self-coupling. The stored phi_t table holds the construction rates, so the
/// produced barrier passes parabolic_eq16 with margin delta.
Barrier solve_barrier(const CoefficientFamily& fam, const CurvatureBounds& bounds,
                      const std::vector<double>& s_grid,
                      const std::vector<double>& phi0, double delta,
                      const std::vector<double>& t_grid, double cfl = 0.4);

}  // namespace twopoint

#endif  // TWOPOINT_BARRIER_HPP

#ifndef TWOPOINT_EQUATIONS_HPP
#define TWOPOINT_EQUATIONS_HPP

#include <string>
#include <vector>

namespace twopoint {

/// Which quasilinear structure the equation is used under:
/// eq_1_4 has coefficients alpha(u, |Du|, t), beta(t) with beta(t) >= 1;
/// eq_1_5 has alpha(|Du|, t) >= 0, beta(|Du|, t) > 0.
enum class EquationForm { eq_1_4, eq_1_5 };

enum class EquationFamily { heat, graphical_mcf, p_laplacian, custom_tabulated };

const char* to_string(EquationForm form);
const char* to_string(EquationFamily family);

/// The coefficient triple of the operator
///   u_t = [alpha n_i n_j + beta (delta_ij - n_i n_j)] D_i D_j u + q,
/// with n = Du/|Du|.
struct Coefficients {
  double alpha = 0.0;
  double beta = 0.0;
  double q = 0.0;
};

/// Enumerated coefficient families with parameters.
///
/// Gradient arguments are regularized as s_eff = sqrt(s^2 + epsilon_reg^2),
/// which keeps every family finite and continuous at critical points.
class CoefficientFamily {
 public:
  static constexpr double kDefaultEpsilonReg = 1e-6;

  /// alpha = beta = 1, q = 0.
  static CoefficientFamily heat(double epsilon_reg = kDefaultEpsilonReg);

  /// Graphical mean curvature flow: alpha = 1/(1+s^2), beta = 1, q = 0.
  static CoefficientFamily graphical_mcf(double epsilon_reg = kDefaultEpsilonReg);

  /// p-Laplacian flow: alpha = (p-1) s^{p-2}, beta = s^{p-2}, q = 0. Requires p > 1.
  static CoefficientFamily p_laplacian(double p,
                                       double epsilon_reg = kDefaultEpsilonReg);

  /// User-sampled alpha/beta/q on a strictly increasing s-grid, linearly
  /// interpolated and clamped outside the table.
  static CoefficientFamily tabulated(std::vector<double> s,
                                     std::vector<double> alpha,
                                     std::vector<double> beta,
                                     std::vector<double> q,
                                     double epsilon_reg = kDefaultEpsilonReg);

  EquationFamily family() const { return family_; }
  double exponent() const { return p_; }
  double epsilon_reg() const { return epsilon_reg_; }
  EquationForm form() const { return form_; }

  /// Tags the family with the targeted equation structure. Tagging eq_1_4
  /// requires beta to be a function of t alone with beta(t) >= 1.
  void set_form(EquationForm form);

  /// Coefficients at (u, s_eff, t) with s_eff = regularized(grad_norm).
  Coefficients evaluate(double u, double grad_norm, double t) const;

  double regularized(double grad_norm) const;

  /// True when beta does not depend on |Du| and beta >= 1 everywhere,
  /// i.e. the family is admissible for the eq_1_4 structure.
  bool beta_time_only_ge1() const;

  std::string name() const;

 private:
  CoefficientFamily() = default;

  EquationFamily family_ = EquationFamily::heat;
  EquationForm form_ = EquationForm::eq_1_4;
  double p_ = 2.0;
  double epsilon_reg_ = kDefaultEpsilonReg;
  std::vector<double> table_s_, table_alpha_, table_beta_, table_q_;
};

}  // namespace twopoint

#endif  // TWOPOINT_EQUATIONS_HPP

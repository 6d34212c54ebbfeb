#include "twopoint/equations.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "twopoint/errors.hpp"

namespace twopoint {

namespace {

double interp_clamped(const std::vector<double>& xs, const std::vector<double>& ys,
                      double x) {
  if (x <= xs.front()) return ys.front();
  if (x >= xs.back()) return ys.back();
  const auto it = std::upper_bound(xs.begin(), xs.end(), x);
  const size_t i = static_cast<size_t>(it - xs.begin());
  const double w = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
  return ys[i - 1] + w * (ys[i] - ys[i - 1]);
}

}  // namespace

const char* to_string(EquationForm form) {
  return form == EquationForm::eq_1_4 ? "eq_1_4" : "eq_1_5";
}

const char* to_string(EquationFamily family) {
  switch (family) {
    case EquationFamily::heat: return "heat";
    case EquationFamily::graphical_mcf: return "graphical_mcf";
    case EquationFamily::p_laplacian: return "p_laplacian";
    case EquationFamily::custom_tabulated: return "custom_tabulated";
  }
  return "?";
}

CoefficientFamily CoefficientFamily::heat(double epsilon_reg) {
  CoefficientFamily f;
  f.family_ = EquationFamily::heat;
  f.form_ = EquationForm::eq_1_4;
  f.epsilon_reg_ = epsilon_reg;
  return f;
}

CoefficientFamily CoefficientFamily::graphical_mcf(double epsilon_reg) {
  CoefficientFamily f;
  f.family_ = EquationFamily::graphical_mcf;
  f.form_ = EquationForm::eq_1_5;
  f.epsilon_reg_ = epsilon_reg;
  return f;
}

CoefficientFamily CoefficientFamily::p_laplacian(double p, double epsilon_reg) {
  if (!(p > 1.0)) throw Error::config("p must exceed 1");
  CoefficientFamily f;
  f.family_ = EquationFamily::p_laplacian;
  f.form_ = EquationForm::eq_1_5;
  f.p_ = p;
  f.epsilon_reg_ = epsilon_reg;
  return f;
}

CoefficientFamily CoefficientFamily::tabulated(std::vector<double> s,
                                               std::vector<double> alpha,
                                               std::vector<double> beta,
                                               std::vector<double> q,
                                               double epsilon_reg) {
  if (s.size() < 2) throw Error::config("tabulated family needs at least 2 samples");
  if (alpha.size() != s.size() || beta.size() != s.size() || q.size() != s.size())
    throw Error::config("tabulated family: alpha/beta/q must match the s-grid size");
  for (size_t i = 0; i + 1 < s.size(); ++i)
    if (!(s[i] < s[i + 1]))
      throw Error::config("tabulated family: s-grid must be strictly increasing");
  for (size_t i = 0; i < s.size(); ++i) {
    if (!std::isfinite(alpha[i]) || !std::isfinite(beta[i]) || !std::isfinite(q[i]))
      throw Error::config("tabulated family: values must be finite");
    if (alpha[i] < 0.0) throw Error::config("tabulated family: alpha must be >= 0");
    if (!(beta[i] > 0.0)) throw Error::config("tabulated family: beta must be > 0");
  }
  CoefficientFamily f;
  f.family_ = EquationFamily::custom_tabulated;
  f.form_ = EquationForm::eq_1_5;
  f.epsilon_reg_ = epsilon_reg;
  f.table_s_ = std::move(s);
  f.table_alpha_ = std::move(alpha);
  f.table_beta_ = std::move(beta);
  f.table_q_ = std::move(q);
  return f;
}

void CoefficientFamily::set_form(EquationForm form) {
  if (form == EquationForm::eq_1_4 && !beta_time_only_ge1()) {
    std::ostringstream os;
    os << name() << " cannot be tagged eq_1_4: beta(t) >= 1 required";
    throw Error::config(os.str());
  }
  form_ = form;
}

double CoefficientFamily::regularized(double grad_norm) const {
  return std::sqrt(grad_norm * grad_norm + epsilon_reg_ * epsilon_reg_);
}

Coefficients CoefficientFamily::evaluate(double u, double grad_norm, double) const {
  (void)u;  // the named families do not depend on u
  const double s = regularized(grad_norm);
  switch (family_) {
    case EquationFamily::heat: return Coefficients{1.0, 1.0, 0.0};
    case EquationFamily::graphical_mcf:
      return Coefficients{1.0 / (1.0 + s * s), 1.0, 0.0};
    case EquationFamily::p_laplacian: {
      const double w = std::pow(s, p_ - 2.0);
      return Coefficients{(p_ - 1.0) * w, w, 0.0};
    }
    case EquationFamily::custom_tabulated:
      return Coefficients{interp_clamped(table_s_, table_alpha_, s),
                          interp_clamped(table_s_, table_beta_, s),
                          interp_clamped(table_s_, table_q_, s)};
  }
  return Coefficients{};
}

bool CoefficientFamily::beta_time_only_ge1() const {
  switch (family_) {
    case EquationFamily::heat: return true;
    case EquationFamily::graphical_mcf: return true;  // beta == 1
    case EquationFamily::p_laplacian: return p_ == 2.0;
    case EquationFamily::custom_tabulated: {
      const double b0 = table_beta_.front();
      if (b0 < 1.0) return false;
      for (double b : table_beta_)
        if (b != b0) return false;
      return true;
    }
  }
  return false;
}

std::string CoefficientFamily::name() const {
  std::ostringstream os;
  os << to_string(family_);
  if (family_ == EquationFamily::p_laplacian) os << "(p=" << p_ << ")";
  return os.str();
}

}  // namespace twopoint

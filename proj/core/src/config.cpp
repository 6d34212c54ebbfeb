#include "twopoint/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <sstream>

#include "twopoint/errors.hpp"

namespace twopoint {

namespace {

std::string trim(const std::string& s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

bool parse_double_strict(const std::string& s, double& out) {
  const std::string t = trim(s);
  if (t.empty()) return false;
  char* end = nullptr;
  out = std::strtod(t.c_str(), &end);
  return end == t.c_str() + t.size();
}

bool parse_int_strict(const std::string& s, int& out) {
  const std::string t = trim(s);
  if (t.empty()) return false;
  char* end = nullptr;
  const long v = std::strtol(t.c_str(), &end, 10);
  if (end != t.c_str() + t.size()) return false;
  out = static_cast<int>(v);
  return true;
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string join_doubles(const std::vector<double>& v) {
  std::string out;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += ' ';
    out += fmt(v[i]);
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Profile

Profile Profile::parse(const std::string& text) {
  const std::string t = trim(text);
  const size_t open = t.find('(');
  if (open == std::string::npos || t.back() != ')')
    throw Error::config("profile '" + t + "' must look like name(a, b, ...)");
  const std::string name = trim(t.substr(0, open));
  const std::string body = t.substr(open + 1, t.size() - open - 2);

  std::vector<double> args;
  std::string piece;
  std::istringstream is(body);
  while (std::getline(is, piece, ',')) {
    double v;
    if (!parse_double_strict(piece, v))
      throw Error::config("profile '" + t + "': bad number '" + trim(piece) + "'");
    args.push_back(v);
  }

  auto arity = [&](size_t lo, size_t hi) {
    if (args.size() < lo || args.size() > hi)
      throw Error::config("profile '" + name + "' expects between " +
                          std::to_string(lo) + " and " + std::to_string(hi) +
                          " arguments");
  };
  auto arg = [&](size_t i, double fallback) {
    return i < args.size() ? args[i] : fallback;
  };

  Profile p;
  if (name == "const") {
    arity(1, 1);
    p.form = Form::constant;
    p.p0 = args[0];
  } else if (name == "sin") {
    arity(1, 3);
    p.form = Form::sine;
    p.p0 = args[0];
    p.p1 = arg(1, 1.0);
    p.p2 = arg(2, 0.0);
  } else if (name == "cos") {
    arity(1, 3);
    p.form = Form::cosine;
    p.p0 = args[0];
    p.p1 = arg(1, 1.0);
    p.p2 = arg(2, 0.0);
  } else if (name == "product_sin") {
    arity(1, 4);
    p.form = Form::product_sine;
    p.p0 = args[0];
    p.p1 = arg(1, 1.0);
    p.p2 = arg(2, 1.0);
    p.p3 = arg(3, 0.0);
  } else if (name == "linear") {
    arity(1, 3);
    p.form = Form::linear;
    p.p0 = args[0];
    p.p1 = arg(1, 0.0);
    p.p2 = arg(2, 0.0);
  } else if (name == "exp_sin") {
    arity(1, 3);
    p.form = Form::exp_sine;
    p.p0 = args[0];
    p.p1 = arg(1, 1.0);
    p.p2 = arg(2, 1.0);
  } else {
    throw Error::config("unknown profile '" + name + "'");
  }
  return p;
}

std::string Profile::describe() const {
  switch (form) {
    case Form::constant: return "const(" + fmt(p0) + ")";
    case Form::sine: return "sin(" + fmt(p0) + ", " + fmt(p1) + ", " + fmt(p2) + ")";
    case Form::cosine: return "cos(" + fmt(p0) + ", " + fmt(p1) + ", " + fmt(p2) + ")";
    case Form::product_sine:
      return "product_sin(" + fmt(p0) + ", " + fmt(p1) + ", " + fmt(p2) + ", " +
             fmt(p3) + ")";
    case Form::linear:
      return "linear(" + fmt(p0) + ", " + fmt(p1) + ", " + fmt(p2) + ")";
    case Form::exp_sine:
      return "exp_sin(" + fmt(p0) + ", " + fmt(p1) + ", " + fmt(p2) + ")";
  }
  return "?";
}

double Profile::eval1d(double x) const {
  switch (form) {
    case Form::constant: return p0;
    case Form::sine: return p0 * std::sin(p1 * x) + p2;
    case Form::cosine: return p0 * std::cos(p1 * x) + p2;
    case Form::product_sine: return p0 * std::sin(p1 * x) + p3;
    case Form::linear: return p0 * x + p2;  // t = 0
    case Form::exp_sine: return p0 * std::sin(p2 * x);  // t = 0
  }
  return 0.0;
}

double Profile::eval2d(double x, double y) const {
  if (form == Form::product_sine) return p0 * std::sin(p1 * x) * std::sin(p2 * y) + p3;
  return eval1d(x);
}

// ---------------------------------------------------------------------------
// Check names

const char* to_string(CheckKind kind) {
  switch (kind) {
    case CheckKind::barrier_condition: return "barrier_condition";
    case CheckKind::containment: return "containment";
    case CheckKind::two_point_psi: return "two_point_psi";
    case CheckKind::two_point_modulus: return "two_point_modulus";
    case CheckKind::grad_cor15: return "grad_cor15";
    case CheckKind::grad_cor17: return "grad_cor17";
    case CheckKind::liyau: return "liyau";
  }
  return "?";
}

namespace {

bool check_from_string(const std::string& s, CheckKind& out) {
  static const std::map<std::string, CheckKind> names = {
      {"barrier_condition", CheckKind::barrier_condition},
      {"containment", CheckKind::containment},
      {"two_point_psi", CheckKind::two_point_psi},
      {"two_point_modulus", CheckKind::two_point_modulus},
      {"grad_cor15", CheckKind::grad_cor15},
      {"grad_cor17", CheckKind::grad_cor17},
      {"liyau", CheckKind::liyau},
  };
  const auto it = names.find(s);
  if (it == names.end()) return false;
  out = it->second;
  return true;
}

struct RawEntry {
  std::string key;
  std::string value;
  int line = 0;
  bool consumed = false;
};

using Sections = std::map<std::string, std::vector<RawEntry>>;

// Pulls typed values out of one section, collecting every violation instead of
// stopping at the first.
class KeyReader {
 public:
  KeyReader(Sections& sections, std::string section, std::vector<std::string>& issues)
      : section_(std::move(section)), issues_(issues) {
    const auto it = sections.find(section_);
    if (it != sections.end()) entries_ = &it->second;
  }

  bool present() const { return entries_ != nullptr; }

  std::optional<std::string> raw(const std::string& key) {
    if (!entries_) return std::nullopt;
    RawEntry* found = nullptr;
    for (RawEntry& e : *entries_) {
      if (e.key != key) continue;
      if (found) {
        issues_.push_back("duplicate key '" + key + "' in [" + section_ + "] (line " +
                          std::to_string(e.line) + ")");
        e.consumed = true;
        continue;
      }
      found = &e;
      e.consumed = true;
    }
    if (!found) return std::nullopt;
    return found->value;
  }

  void read_double(const std::string& key, double& target) {
    const auto v = raw(key);
    if (!v) return;
    double parsed;
    if (parse_double_strict(*v, parsed))
      target = parsed;
    else
      issues_.push_back("[" + section_ + "] " + key + ": invalid number '" + *v + "'");
  }

  void read_optional_double(const std::string& key, std::optional<double>& target) {
    const auto v = raw(key);
    if (!v) return;
    double parsed;
    if (parse_double_strict(*v, parsed))
      target = parsed;
    else
      issues_.push_back("[" + section_ + "] " + key + ": invalid number '" + *v + "'");
  }

  void read_int(const std::string& key, int& target) {
    const auto v = raw(key);
    if (!v) return;
    int parsed;
    if (parse_int_strict(*v, parsed))
      target = parsed;
    else
      issues_.push_back("[" + section_ + "] " + key + ": invalid integer '" + *v + "'");
  }

  void read_string(const std::string& key, std::string& target) {
    const auto v = raw(key);
    if (v) target = *v;
  }

  void read_double_list(const std::string& key, std::vector<double>& target) {
    const auto v = raw(key);
    if (!v) return;
    std::vector<double> values;
    for (const std::string& tok : split_ws(*v)) {
      double parsed;
      if (!parse_double_strict(tok, parsed)) {
        issues_.push_back("[" + section_ + "] " + key + ": invalid number '" + tok + "'");
        return;
      }
      values.push_back(parsed);
    }
    target = std::move(values);
  }

  void read_profile(const std::string& key, std::optional<Profile>& target) {
    const auto v = raw(key);
    if (!v) return;
    try {
      target = Profile::parse(*v);
    } catch (const Error& e) {
      issues_.push_back("[" + section_ + "] " + key + ": " + e.what());
    }
  }

  template <typename Enum>
  void read_enum(const std::string& key,
                 const std::vector<std::pair<std::string, Enum>>& names, Enum& target) {
    const auto v = raw(key);
    if (!v) return;
    for (const auto& [name, value] : names)
      if (*v == name) {
        target = value;
        return;
      }
    std::string allowed;
    for (const auto& [name, value] : names) {
      if (!allowed.empty()) allowed += ", ";
      allowed += name;
    }
    issues_.push_back("[" + section_ + "] " + key + ": unknown value '" + *v +
                      "' (expected one of: " + allowed + ")");
  }

 private:
  std::string section_;
  std::vector<std::string>& issues_;
  std::vector<RawEntry>* entries_ = nullptr;
};

}  // namespace

// ---------------------------------------------------------------------------
// ExperimentConfig helpers

bool ExperimentConfig::has_check(CheckKind kind) const {
  return std::find(checks.begin(), checks.end(), kind) != checks.end();
}

bool ExperimentConfig::needs_barrier() const {
  return has_check(CheckKind::barrier_condition) || has_check(CheckKind::containment) ||
         has_check(CheckKind::two_point_psi) || has_check(CheckKind::two_point_modulus) ||
         has_check(CheckKind::grad_cor15) || has_check(CheckKind::grad_cor17);
}

bool ExperimentConfig::needs_trajectory() const {
  return has_check(CheckKind::two_point_psi) || has_check(CheckKind::two_point_modulus) ||
         has_check(CheckKind::grad_cor15) || has_check(CheckKind::grad_cor17) ||
         has_check(CheckKind::liyau);
}

Geometry ExperimentConfig::make_geometry() const {
  switch (geometry_family) {
    case GeometryFamily::circle: return Geometry::circle(circle_length);
    case GeometryFamily::torus2: return Geometry::torus2(torus_lx, torus_ly);
    case GeometryFamily::sphere_static: return Geometry::sphere_static(r0);
    case GeometryFamily::sphere_shrinking: return Geometry::sphere_shrinking(r0);
  }
  throw Error::config("unknown geometry family");
}

CoefficientFamily ExperimentConfig::make_family(std::optional<double> epsilon_override) const {
  const double eps = epsilon_override.value_or(epsilon_reg);
  CoefficientFamily fam = [&] {
    switch (equation_family) {
      case EquationFamily::heat: return CoefficientFamily::heat(eps);
      case EquationFamily::graphical_mcf: return CoefficientFamily::graphical_mcf(eps);
      case EquationFamily::p_laplacian: return CoefficientFamily::p_laplacian(p, eps);
      case EquationFamily::custom_tabulated:
        return CoefficientFamily::tabulated(table_s, table_alpha, table_beta, table_q, eps);
    }
    throw Error::config("unknown equation family");
  }();
  if (form) fam.set_form(*form);
  return fam;
}

std::vector<double> ExperimentConfig::snapshot_times() const {
  std::vector<double> times;
  if (snapshots <= 1 || t_end <= snap_start) {
    times.push_back(t_end);
    return times;
  }
  for (int k = 0; k < snapshots; ++k)
    times.push_back(snap_start + (t_end - snap_start) * k / (snapshots - 1));
  return times;
}

double ExperimentConfig::resolved_s_max(const Geometry& geom) const {
  if (barrier_s_max) return *barrier_s_max;
  if (has_check(CheckKind::two_point_modulus)) return 0.5 * geom.diameter();
  return geom.diameter();
}

int ExperimentConfig::resolved_t_nodes() const {
  if (barrier_t_nodes > 0) return barrier_t_nodes;
  if (!(t_end > 0.0)) return 1;
  constexpr double kTargetSpacing = 0.01;
  int nt;
  if (snap_start == 0.0 && snapshots >= 2) {
    const double spacing = t_end / (snapshots - 1);
    const int refine = std::max(1, static_cast<int>(std::ceil(spacing / kTargetSpacing - 1e-9)));
    nt = (snapshots - 1) * refine + 1;
  } else {
    nt = static_cast<int>(std::ceil(t_end / kTargetSpacing)) + 1;
  }
  return std::clamp(nt, 2, 2001);
}

ConditionMode ExperimentConfig::resolved_condition_mode() const {
  if (condition_mode) return *condition_mode;
  if (has_check(CheckKind::two_point_psi)) return ConditionMode::parabolic_thm14;
  return ConditionMode::parabolic_eq16;
}

double ExperimentConfig::resolved_margin() const {
  if (margin) return *margin;
  if (resolved_condition_mode() == ConditionMode::parabolic_eq16)
    return barrier_source == BarrierSource::solve ? 0.5 * delta : 0.0;
  return 1e-8;  // strict inequalities need positive slack
}

// ---------------------------------------------------------------------------
// parse_config

ExperimentConfig parse_config(const std::string& text) {
  Sections sections;
  std::vector<std::string> issues;

  static const std::vector<std::string> kKnownSections = {
      "geometry", "equation", "grid", "time", "initial",
      "barrier", "checks", "liyau", "tolerances", "output"};

  // Line scan: [section] headers and key = value pairs, '#' starts a comment.
  std::istringstream stream(text);
  std::string line;
  std::string current;
  int lineno = 0;
  while (std::getline(stream, line)) {
    ++lineno;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string s = trim(line);
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') {
        issues.push_back("line " + std::to_string(lineno) + ": unterminated section header");
        continue;
      }
      current = trim(s.substr(1, s.size() - 2));
      if (std::find(kKnownSections.begin(), kKnownSections.end(), current) ==
          kKnownSections.end()) {
        issues.push_back("line " + std::to_string(lineno) + ": unknown section [" +
                         current + "]");
        current.clear();
        continue;
      }
      sections[current];  // mark as present even if empty
      continue;
    }
    const size_t eq = s.find('=');
    if (eq == std::string::npos) {
      issues.push_back("line " + std::to_string(lineno) + ": expected 'key = value'");
      continue;
    }
    if (current.empty()) {
      issues.push_back("line " + std::to_string(lineno) + ": key outside any section");
      continue;
    }
    RawEntry e;
    e.key = trim(s.substr(0, eq));
    e.value = trim(s.substr(eq + 1));
    e.line = lineno;
    if (e.key.empty()) {
      issues.push_back("line " + std::to_string(lineno) + ": empty key");
      continue;
    }
    sections[current].push_back(std::move(e));
  }

  ExperimentConfig cfg;

  {
    KeyReader r(sections, "geometry", issues);
    r.read_enum<GeometryFamily>("family",
                                {{"circle", GeometryFamily::circle},
                                 {"torus2", GeometryFamily::torus2},
                                 {"sphere_shrinking", GeometryFamily::sphere_shrinking},
                                 {"sphere_static", GeometryFamily::sphere_static}},
                                cfg.geometry_family);
    r.read_double("length", cfg.circle_length);
    r.read_double("length_x", cfg.torus_lx);
    r.read_double("length_y", cfg.torus_ly);
    r.read_double("r0", cfg.r0);
  }
  {
    KeyReader r(sections, "equation", issues);
    r.read_enum<EquationFamily>("family",
                                {{"heat", EquationFamily::heat},
                                 {"graphical_mcf", EquationFamily::graphical_mcf},
                                 {"p_laplacian", EquationFamily::p_laplacian},
                                 {"custom_tabulated", EquationFamily::custom_tabulated}},
                                cfg.equation_family);
    r.read_double("p", cfg.p);
    r.read_double("epsilon_reg", cfg.epsilon_reg);
    if (const auto v = r.raw("form"); v) {
      if (*v == "eq_1_4")
        cfg.form = EquationForm::eq_1_4;
      else if (*v == "eq_1_5")
        cfg.form = EquationForm::eq_1_5;
      else
        issues.push_back("[equation] form: unknown value '" + *v +
                         "' (expected eq_1_4 or eq_1_5)");
    }
    r.read_double_list("epsilon_sweep", cfg.epsilon_sweep);
    r.read_double_list("table_s", cfg.table_s);
    r.read_double_list("table_alpha", cfg.table_alpha);
    r.read_double_list("table_beta", cfg.table_beta);
    r.read_double_list("table_q", cfg.table_q);
  }
  {
    KeyReader r(sections, "grid", issues);
    r.read_int("n", cfg.n);
  }
  {
    KeyReader r(sections, "time", issues);
    r.read_double("t_end", cfg.t_end);
    r.read_int("snapshots", cfg.snapshots);
    r.read_double("snap_start", cfg.snap_start);
    r.read_double("c_cfl", cfg.c_cfl);
  }
  {
    KeyReader r(sections, "initial", issues);
    std::optional<Profile> prof;
    r.read_profile("profile", prof);
    if (prof) cfg.initial = *prof;
  }
  {
    KeyReader r(sections, "barrier", issues);
    cfg.has_barrier = r.present();
    r.read_enum<BarrierSource>("kind",
                               {{"analytic", BarrierSource::analytic},
                                {"solve", BarrierSource::solve},
                                {"csv", BarrierSource::csv}},
                               cfg.barrier_source);
    r.read_profile("analytic", cfg.barrier_analytic);
    r.read_profile("phi0", cfg.barrier_phi0);
    r.read_double("delta", cfg.delta);
    r.read_optional_double("margin", cfg.margin);
    if (const auto v = r.raw("condition_mode"); v) {
      if (*v == "elliptic" || *v == "elliptic_1_3")
        cfg.condition_mode = ConditionMode::elliptic_1_3;
      else if (*v == "thm14" || *v == "parabolic_thm14")
        cfg.condition_mode = ConditionMode::parabolic_thm14;
      else if (*v == "eq16" || *v == "parabolic_eq16")
        cfg.condition_mode = ConditionMode::parabolic_eq16;
      else
        issues.push_back("[barrier] condition_mode: unknown value '" + *v +
                         "' (expected elliptic, thm14 or eq16)");
    }
    r.read_optional_double("s_max", cfg.barrier_s_max);
    r.read_int("s_nodes", cfg.barrier_s_nodes);
    r.read_int("t_nodes", cfg.barrier_t_nodes);
    r.read_string("csv", cfg.barrier_csv);
  }
  {
    KeyReader r(sections, "checks", issues);
    if (const auto v = r.raw("run"); v) {
      for (const std::string& tok : split_ws(*v)) {
        CheckKind kind;
        if (check_from_string(tok, kind))
          cfg.checks.push_back(kind);
        else
          issues.push_back("[checks] run: unknown check '" + tok + "'");
      }
    }
  }
  {
    KeyReader r(sections, "liyau", issues);
    r.read_double("alpha_ly", cfg.alpha_ly);
  }
  {
    KeyReader r(sections, "tolerances", issues);
    r.read_optional_double("tol_two_point", cfg.tol_two_point);
    r.read_double("tol_ratio", cfg.tol_ratio);
    r.read_double("tol_liyau", cfg.tol_liyau);
  }
  {
    KeyReader r(sections, "output", issues);
    r.read_string("dir", cfg.output_dir);
  }

  // Unknown keys are errors: no silent defaults for misspellings.
  for (const auto& [name, entries] : sections)
    for (const RawEntry& e : entries)
      if (!e.consumed)
        issues.push_back("unknown key '" + e.key + "' in [" + name + "] (line " +
                         std::to_string(e.line) + ")");

  // -------------------------------------------------------------------------
  // Semantic validation, all violations listed together.
  auto fail = [&](const std::string& msg) { issues.push_back(msg); };

  switch (cfg.geometry_family) {
    case GeometryFamily::circle:
      if (!(cfg.circle_length > 0.0)) fail("[geometry] length must be positive");
      break;
    case GeometryFamily::torus2:
      if (!(cfg.torus_lx > 0.0) || !(cfg.torus_ly > 0.0))
        fail("[geometry] torus lengths must be positive");
      break;
    default:
      if (!(cfg.r0 > 0.0)) fail("[geometry] r0 must be positive");
      break;
  }

  std::optional<CoefficientFamily> family;
  try {
    family = cfg.make_family();
  } catch (const Error& e) {
    fail(e.what());
  }

  if (cfg.epsilon_reg < 0.0) fail("[equation] epsilon_reg must be >= 0");
  for (double eps : cfg.epsilon_sweep)
    if (eps < 0.0) fail("[equation] epsilon_sweep values must be >= 0");

  if (cfg.n < 3) fail("[grid] n must be at least 3");
  if (cfg.t_end < 0.0) fail("[time] t_end must be >= 0");
  if (cfg.snapshots < 1) fail("[time] snapshots must be >= 1");
  if (cfg.snap_start < 0.0 || cfg.snap_start > cfg.t_end)
    fail("[time] snap_start must lie in [0, t_end]");
  if (!(cfg.c_cfl > 0.0) || cfg.c_cfl > 1.0) fail("[time] c_cfl must lie in (0, 1]");

  if (cfg.geometry_family == GeometryFamily::sphere_shrinking && cfg.r0 > 0.0) {
    const double horizon = 0.5 * cfg.r0 * cfg.r0;
    if (cfg.t_end >= horizon) {
      std::ostringstream os;
      os << "[time] t_end = " << cfg.t_end
         << " reaches the shrinking-sphere horizon r0^2/2 = " << horizon;
      fail(os.str());
    }
  }

  if (cfg.has_check(CheckKind::two_point_psi) && cfg.has_check(CheckKind::two_point_modulus))
    fail("[checks] choose one two-point mode per experiment (psi or modulus)");

  if (cfg.has_check(CheckKind::two_point_psi) && family && !family->beta_time_only_ge1())
    fail("two_point_psi (Theorem 1.4 structure): beta(t) >= 1 required, but family " +
         family->name() + " is not admissible");

  if (cfg.has_check(CheckKind::liyau)) {
    if (!(cfg.alpha_ly > 1.0)) fail("[liyau] alpha must exceed 1");
    if (cfg.equation_family != EquationFamily::heat)
      fail("liyau check requires the heat family");
    if (cfg.geometry_family == GeometryFamily::sphere_static)
      fail("liyau check requires a Ricci flow; sphere_static is a supersolution only");
    if (!(cfg.t_end > 0.0)) fail("liyau check needs t_end > 0");
  }

  if (cfg.needs_barrier() && !cfg.has_barrier)
    fail("the requested checks need a [barrier] section");

  if (cfg.has_barrier) {
    switch (cfg.barrier_source) {
      case BarrierSource::analytic:
        if (!cfg.barrier_analytic)
          fail("[barrier] kind = analytic requires an 'analytic' descriptor");
        else if (cfg.barrier_analytic->form != Profile::Form::linear &&
                 cfg.barrier_analytic->form != Profile::Form::sine &&
                 cfg.barrier_analytic->form != Profile::Form::exp_sine)
          fail("[barrier] analytic descriptor must be linear, sin or exp_sin");
        break;
      case BarrierSource::solve:
        if (!cfg.barrier_phi0)
          fail("[barrier] kind = solve requires a 'phi0' profile");
        else if (cfg.barrier_phi0->form != Profile::Form::linear &&
                 cfg.barrier_phi0->form != Profile::Form::sine)
          fail("[barrier] phi0 must be a linear or sin profile");
        break;
      case BarrierSource::csv:
        if (cfg.barrier_csv.empty()) fail("[barrier] kind = csv requires a 'csv' path");
        break;
    }
    if (cfg.delta < 0.0) fail("[barrier] delta must be >= 0");
    if (cfg.margin && *cfg.margin < 0.0) fail("[barrier] margin must be >= 0");
    if (cfg.barrier_s_nodes < 8) fail("[barrier] s_nodes must be at least 8");
    if (cfg.barrier_t_nodes < 0) fail("[barrier] t_nodes must be >= 0");
    if (cfg.barrier_s_max && !(*cfg.barrier_s_max > 0.0))
      fail("[barrier] s_max must be positive");

    // The barrier domain must cover every distance the checks can see.
    bool geometry_ok = true;
    switch (cfg.geometry_family) {
      case GeometryFamily::circle: geometry_ok = cfg.circle_length > 0.0; break;
      case GeometryFamily::torus2:
        geometry_ok = cfg.torus_lx > 0.0 && cfg.torus_ly > 0.0;
        break;
      default: geometry_ok = cfg.r0 > 0.0; break;
    }
    if (geometry_ok) {
      const Geometry geom = cfg.make_geometry();
      const double s_max = cfg.resolved_s_max(geom);
      const double tol = 1e-12 * std::max(1.0, geom.diameter());
      if (cfg.has_check(CheckKind::two_point_psi) && s_max < geom.diameter() - tol)
        fail("[barrier] s_max must cover the diameter D for psi-form checks");
      if (cfg.has_check(CheckKind::two_point_modulus) &&
          s_max < 0.5 * geom.diameter() - tol)
        fail("[barrier] s_max must cover D/2 for modulus-form checks");
    }
  }

  if (cfg.initial.form == Profile::Form::product_sine &&
      cfg.geometry_family != GeometryFamily::torus2)
    fail("[initial] product_sin profiles require the torus2 geometry");

  if (cfg.tol_ratio < 0.0) fail("[tolerances] tol_ratio must be >= 0");
  if (cfg.tol_two_point && !(*cfg.tol_two_point > 0.0))
    fail("[tolerances] tol_two_point must be positive");
  if (cfg.output_dir.empty()) fail("[output] dir must not be empty");

  if (!issues.empty()) {
    std::string msg = "configuration errors:";
    for (const std::string& m : issues) msg += "\n  - " + m;
    throw Error::config(msg);
  }
  return cfg;
}

// ---------------------------------------------------------------------------
// serialize

std::string ExperimentConfig::serialize() const {
  std::ostringstream os;
  os << "[geometry]\n";
  os << "family = " << to_string(geometry_family) << "\n";
  os << "length = " << fmt(circle_length) << "\n";
  os << "length_x = " << fmt(torus_lx) << "\n";
  os << "length_y = " << fmt(torus_ly) << "\n";
  os << "r0 = " << fmt(r0) << "\n\n";

  os << "[equation]\n";
  os << "family = " << to_string(equation_family) << "\n";
  os << "p = " << fmt(p) << "\n";
  os << "epsilon_reg = " << fmt(epsilon_reg) << "\n";
  if (form) os << "form = " << to_string(*form) << "\n";
  if (!epsilon_sweep.empty()) os << "epsilon_sweep = " << join_doubles(epsilon_sweep) << "\n";
  if (!table_s.empty()) {
    os << "table_s = " << join_doubles(table_s) << "\n";
    os << "table_alpha = " << join_doubles(table_alpha) << "\n";
    os << "table_beta = " << join_doubles(table_beta) << "\n";
    os << "table_q = " << join_doubles(table_q) << "\n";
  }
  os << "\n[grid]\n";
  os << "n = " << n << "\n";

  os << "\n[time]\n";
  os << "t_end = " << fmt(t_end) << "\n";
  os << "snapshots = " << snapshots << "\n";
  os << "snap_start = " << fmt(snap_start) << "\n";
  os << "c_cfl = " << fmt(c_cfl) << "\n";

  os << "\n[initial]\n";
  os << "profile = " << initial.describe() << "\n";

  if (has_barrier) {
    os << "\n[barrier]\n";
    switch (barrier_source) {
      case BarrierSource::analytic: os << "kind = analytic\n"; break;
      case BarrierSource::solve: os << "kind = solve\n"; break;
      case BarrierSource::csv: os << "kind = csv\n"; break;
    }
    if (barrier_analytic) os << "analytic = " << barrier_analytic->describe() << "\n";
    if (barrier_phi0) os << "phi0 = " << barrier_phi0->describe() << "\n";
    os << "delta = " << fmt(delta) << "\n";
    if (margin) os << "margin = " << fmt(*margin) << "\n";
    if (condition_mode) {
      const char* name = *condition_mode == ConditionMode::elliptic_1_3 ? "elliptic"
                         : *condition_mode == ConditionMode::parabolic_thm14 ? "thm14"
                                                                             : "eq16";
      os << "condition_mode = " << name << "\n";
    }
    if (barrier_s_max) os << "s_max = " << fmt(*barrier_s_max) << "\n";
    os << "s_nodes = " << barrier_s_nodes << "\n";
    os << "t_nodes = " << barrier_t_nodes << "\n";
    if (!barrier_csv.empty()) os << "csv = " << barrier_csv << "\n";
  }

  if (!checks.empty()) {
    os << "\n[checks]\n";
    os << "run =";
    for (CheckKind c : checks) os << " " << to_string(c);
    os << "\n";
  }

  os << "\n[liyau]\n";
  os << "alpha_ly = " << fmt(alpha_ly) << "\n";

  os << "\n[tolerances]\n";
  if (tol_two_point) os << "tol_two_point = " << fmt(*tol_two_point) << "\n";
  os << "tol_ratio = " << fmt(tol_ratio) << "\n";
  os << "tol_liyau = " << fmt(tol_liyau) << "\n";

  os << "\n[output]\n";
  os << "dir = " << output_dir << "\n";
  return os.str();
}

}  // namespace twopoint

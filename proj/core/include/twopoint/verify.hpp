#ifndef TWOPOINT_VERIFY_HPP
#define TWOPOINT_VERIFY_HPP

#include <vector>

#include "twopoint/barrier.hpp"
#include "twopoint/equations.hpp"
#include "twopoint/field.hpp"

namespace twopoint {

/// Two-point functions whose nonpositivity encodes the estimates:
///   psi_form:     Z(x, y, t) = Psi(u(y,t), t) - Psi(u(x,t), t) - d_t(x, y)
///   modulus_form: C(x, y, t) = u(y,t) - u(x,t) - 2 phi(d_t(x,y)/2, t)
enum class TwoPointMode { psi_form, modulus_form };

enum class GradientMode { cor15, cor17 };

const char* to_string(TwoPointMode mode);
const char* to_string(GradientMode mode);

struct SnapshotWorst {
  double t = 0.0;
  double worst = 0.0;
  int xi = 0;
  int yi = 0;
};

struct TwoPointReport {
  TwoPointMode mode = TwoPointMode::psi_form;
  std::vector<SnapshotWorst> per_snapshot;
  double worst = 0.0;
  double worst_t = 0.0;
  int worst_xi = 0;
  int worst_yi = 0;
  double tol = 0.0;
  bool pass = false;
};

struct GradientRow {
  double t = 0.0;
  int node = 0;
  double grad = 0.0;
  double bound = 0.0;
  double ratio = 0.0;
};

struct GradientReport {
  GradientMode mode = GradientMode::cor17;
  std::vector<GradientRow> rows;  // time-major
  double worst_ratio = 0.0;
  double worst_t = 0.0;
  int worst_node = 0;
  double tol_ratio = 0.0;
  bool pass = false;
};

/// Parameters of the Li-Yau bound. alpha_ly is the Harnack parameter (> 1),
/// distinct from the diffusion coefficient alpha.
struct LiYauParams {
  double alpha_ly = 2.0;
  double k0 = 0.0;
  double k1 = 0.0;
  int n = 1;
};

struct LiYauRow {
  double t = 0.0;
  int node = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // rhs - lhs
};

struct LiYauReport {
  std::vector<LiYauRow> rows;
  double worst = 0.0;  // max over nodes/snapshots of lhs - rhs
  double worst_t = 0.0;
  int worst_node = 0;
  double tol = 0.0;
  bool pass = false;
};

/// n alpha^2 / t + n alpha^3 K0 / (alpha - 1) + n^{3/2} alpha^2 (K0 + K1).
double liyau_rhs(const LiYauParams& params, double t);

/// Brute force over all ordered grid pairs at the field's own time.
/// psi_form propagates range errors from the barrier inverse.
TwoPointReport initial_containment(const ScalarField& u0, const Barrier& barrier,
                                   TwoPointMode mode, double tol, int threads = 1);

/// Brute force over all ordered pairs at every snapshot, with distances taken
/// at the snapshot time. Refuses inadmissible hypotheses (psi_form needs an
/// eq_1_4 family and Ric >= 0) before any computation. The pair loop is
/// data-parallel with a deterministic reduction: identical results for any
/// thread count, argmax ties broken by the lexicographically smallest pair.
TwoPointReport two_point_check(const Trajectory& traj, const Barrier& barrier,
                               TwoPointMode mode, const CoefficientFamily& fam,
                               double tol, int threads = 1);

/// Compares |grad u| per node/snapshot against the corollary bound
/// phi'(Psi(u(x,t), t), t) (cor15) or phi'(0, t) (cor17).
GradientReport gradient_check(const Trajectory& traj, const Barrier& barrier,
                              GradientMode mode, double tol_ratio = 0.02);

/// Li-Yau check for positive heat solutions under exact Ricci flow (shrinking
/// sphere) or static flat geometries. u_t is taken from the spatial operator.
LiYauReport liyau_check(const Trajectory& traj, const CoefficientFamily& fam,
                        const LiYauParams& params, double tol);

}  // namespace twopoint

#endif  // TWOPOINT_VERIFY_HPP

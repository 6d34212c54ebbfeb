#ifndef TWOPOINT_SOLVER_HPP
#define TWOPOINT_SOLVER_HPP

#include <vector>

#include "twopoint/equations.hpp"
#include "twopoint/field.hpp"

namespace twopoint {

/// Metric norm of the gradient at every node: centered differences divided by
/// the metric scale, periodic wrap on circle/torus, one-sided at sphere poles.
std::vector<double> gradient_norm(const ScalarField& field);

/// Metric Laplacian of the field (the alpha = beta = 1 operator). Sphere pole
/// rows use the symmetric limit 2 u_theta_theta / r^2 via ghost reflection.
std::vector<double> metric_laplacian(const ScalarField& field);

/// Stable explicit time step: cfl * h_eff^2 / (2 max_nodes max(alpha, beta)).
/// For the shrinking sphere h_eff uses the radius at the end of the candidate
/// step, so the bound stays valid while the metric contracts.
double cfl_dt(const ScalarField& field, const CoefficientFamily& fam,
              double cfl = 0.4);

/// One explicit Euler update of
///   u_t = [alpha n n + beta (I - n n)] : Hess u + q
/// with the projector regularized through |Du|_eps. Throws a stability error
/// when dt exceeds the hard diffusive limit and a divergence error when the
/// update stops being finite.
ScalarField step(const ScalarField& field, const CoefficientFamily& fam, double dt);

/// Evolves u0 to t_end, landing exactly on the requested snapshot times by
/// clipping dt. The initial state and the final time are always included.
Trajectory evolve(const ScalarField& u0, const CoefficientFamily& fam,
                  double t_end, const std::vector<double>& snapshot_times,
                  StepControls controls = {});

}  // namespace twopoint

#endif  // TWOPOINT_SOLVER_HPP

#ifndef TWOPOINT_FIELD_HPP
#define TWOPOINT_FIELD_HPP

#include <functional>
#include <vector>

#include "twopoint/geometry.hpp"

namespace twopoint {

enum class GridKind { circle, torus2, sphere_latitude };

/// Discretization chart matching a geometry: periodic nodes on the circle and
/// torus, an inclusive latitude line [0, pi] with pole nodes for spheres
/// (rotationally symmetric reduction).
struct Grid {
  GridKind kind = GridKind::circle;
  int nx = 0;
  int ny = 1;
  double hx = 0.0;
  double hy = 0.0;

  /// n nodes per direction (torus gets n x n). Requires n >= 3.
  static Grid make(const Geometry& geom, int n);

  int node_count() const { return nx * ny; }

  /// Chart coordinates of flat node index k. Torus indexing is row-major with
  /// x outer: k = ix * ny + iy.
  Point node(int k) const;

  /// Metric grid spacing; spheres scale latitude spacing by the radius.
  double metric_spacing(double radius) const;
};

/// Grid sample of u(., t) on a geometry at a fixed time.
struct ScalarField {
  Geometry geom = Geometry::circle(1.0);
  Grid grid;
  double t = 0.0;
  std::vector<double> values;

  static ScalarField sample(const Geometry& geom, int n,
                            const std::function<double(Point)>& f, double t = 0.0);
  static ScalarField constant(const Geometry& geom, int n, double value,
                              double t = 0.0);
};

struct StepControls {
  double cfl = 0.4;
};

/// Ordered snapshots of an evolution, all on the same grid.
struct Trajectory {
  std::vector<ScalarField> snapshots;
  StepControls controls;

  const ScalarField& initial() const { return snapshots.front(); }
  const ScalarField& final_state() const { return snapshots.back(); }
};

}  // namespace twopoint

#endif  // TWOPOINT_FIELD_HPP

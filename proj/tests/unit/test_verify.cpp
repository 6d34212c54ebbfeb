#include <doctest.h>

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "twopoint/errors.hpp"
#include "twopoint/solver.hpp"
#include "twopoint/verify.hpp"

using namespace twopoint;

namespace {
constexpr double kPi = 3.14159265358979323846;

ScalarField sin_on_circle(int n) {
  return ScalarField::sample(Geometry::circle(2.0 * kPi), n,
                             [](Point p) { return std::sin(p.a); });
}

// slope-2 barrier shifted so that [-1, 1]-valued data stays in range; the
// offset cancels inside the two-point difference
Barrier slope2_barrier(double t_max) {
  return Barrier::linear(2.0, 0.0, -2.0, kPi, t_max, 129, 9);
}
}  // namespace

TEST_CASE("initial containment") {
  const auto flat = ScalarField::constant(Geometry::circle(2.0 * kPi), 64, 0.25);
  const Barrier b = slope2_barrier(1.0);
  const TwoPointReport r = initial_containment(flat, b, TwoPointMode::psi_form, 1e-12);
  CHECK(r.pass);
  CHECK(r.worst == 0.0);  // attained at coincident pairs

  const auto u0 = sin_on_circle(128);
  CHECK(initial_containment(u0, b, TwoPointMode::psi_form, 1e-9).pass);

  // mean value fails for slope 1/2 < max |u0'|; the s-domain is stretched so
  // the barrier range still contains [-1, 1] and Psi stays defined
  const Barrier half = Barrier::linear(0.5, 0.0, -2.0, 6.5, 1.0, 129, 9);
  const TwoPointReport bad = initial_containment(u0, half, TwoPointMode::psi_form, 1e-9);
  CHECK_FALSE(bad.pass);
  CHECK(bad.worst > 0.1);
}

TEST_CASE("psi-form two-point check on the heat flow") {
  const auto traj = evolve(sin_on_circle(128), CoefficientFamily::heat(), 0.5,
                           {0.1, 0.2, 0.3, 0.4});
  const Barrier b = slope2_barrier(0.5);
  const TwoPointReport r =
      two_point_check(traj, b, TwoPointMode::psi_form, CoefficientFamily::heat(), 1e-3);
  CHECK(r.pass);
  CHECK(r.worst <= 1e-3);
  CHECK(r.worst >= 0.0);  // Z(x, x, t) = 0
  CHECK(r.per_snapshot.size() == 6);
}

TEST_CASE("constant data stays at worst zero") {
  const auto u0 = ScalarField::constant(Geometry::circle(2.0 * kPi), 48, 0.3);
  const auto traj = evolve(u0, CoefficientFamily::heat(), 0.2, {0.1});
  const Barrier b = slope2_barrier(0.2);
  const TwoPointReport r =
      two_point_check(traj, b, TwoPointMode::psi_form, CoefficientFamily::heat(), 1e-12);
  CHECK(r.pass);
  for (const SnapshotWorst& s : r.per_snapshot) CHECK(s.worst == 0.0);
}

TEST_CASE("psi-form antisymmetry identity") {
  const auto u0 = sin_on_circle(32);
  const Barrier b = slope2_barrier(1.0);
  std::vector<double> psi(u0.values.size());
  for (size_t i = 0; i < psi.size(); ++i) psi[i] = b.invert(u0.values[i], 0.0);
  for (size_t i = 0; i < psi.size(); ++i) {
    for (size_t j = i; j < psi.size(); ++j) {
      const double d =
          u0.geom.distance(u0.grid.node(static_cast<int>(i)),
                           u0.grid.node(static_cast<int>(j)), 0.0);
      const double zij = psi[j] - psi[i] - d;
      const double zji = psi[i] - psi[j] - d;
      CHECK(zij + zji == doctest::Approx(-2.0 * d).epsilon(1e-14));
      if (i == j) CHECK(zij == 0.0);
    }
  }
}

TEST_CASE("hypothesis guards refuse inadmissible configurations") {
  const auto traj = evolve(sin_on_circle(32), CoefficientFamily::p_laplacian(3.0), 0.01, {});
  const Barrier b = slope2_barrier(0.01);
  try {
    two_point_check(traj, b, TwoPointMode::psi_form, CoefficientFamily::p_laplacian(3.0),
                    1e-3);
    FAIL("expected hypothesis error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::hypothesis);
    CHECK(std::string(e.what()).find("beta(t) >= 1") != std::string::npos);
  }
}

TEST_CASE("pair-parallel worst equals the exhaustive double loop") {
  const int n = 64;
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> uval(-1.0, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    auto u0 = ScalarField::sample(Geometry::circle(2.0 * kPi), n,
                                  [&](Point) { return uval(rng); });
    // smooth once so the CFL limit is not absurd, keep the data random
    u0 = step(u0, CoefficientFamily::heat(), cfl_dt(u0, CoefficientFamily::heat()));
    u0.t = 0.0;
    const auto traj = evolve(u0, CoefficientFamily::heat(), 0.002, {0.001});
    const Barrier b = Barrier::linear(3.0, 0.0, -3.0, kPi, 0.01, 65, 3);

    const TwoPointReport one =
        two_point_check(traj, b, TwoPointMode::psi_form, CoefficientFamily::heat(), 1.0, 1);
    const TwoPointReport four =
        two_point_check(traj, b, TwoPointMode::psi_form, CoefficientFamily::heat(), 1.0, 4);
    CHECK(one.worst == four.worst);
    CHECK(one.worst_xi == four.worst_xi);
    CHECK(one.worst_yi == four.worst_yi);

    // independent exhaustive scan over every ordered pair of the worst snapshot
    double worst = -1e300;
    int wx = -1, wy = -1;
    size_t worst_snap = 0;
    for (size_t k = 0; k < traj.snapshots.size(); ++k) {
      const ScalarField& f = traj.snapshots[k];
      std::vector<double> psi(f.values.size());
      for (size_t i = 0; i < psi.size(); ++i) psi[i] = b.invert(f.values[i], f.t);
      for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) {
          const double z =
              psi[y] - psi[x] - f.geom.distance(f.grid.node(x), f.grid.node(y), f.t);
          if (z > worst) {
            worst = z;
            wx = x;
            wy = y;
            worst_snap = k;
          }
        }
      }
    }
    (void)worst_snap;
    CHECK(one.worst == worst);
    CHECK(one.worst_xi == wx);
    CHECK(one.worst_yi == wy);
  }
}

TEST_CASE("gradient corollaries") {
  const auto flat = ScalarField::constant(Geometry::circle(2.0 * kPi), 32, 0.1);
  const auto traj_flat = evolve(flat, CoefficientFamily::heat(), 0.01, {});
  const Barrier b = slope2_barrier(0.01);
  const GradientReport rf = gradient_check(traj_flat, b, GradientMode::cor15);
  CHECK(rf.pass);
  CHECK(rf.worst_ratio == 0.0);

  const auto traj = evolve(sin_on_circle(128), CoefficientFamily::heat(), 0.3, {0.15});
  const Barrier b2 = slope2_barrier(0.3);
  const GradientReport r15 = gradient_check(traj, b2, GradientMode::cor15);
  CHECK(r15.pass);
  CHECK(r15.worst_ratio <= 0.5 + 1e-3);
  for (const GradientRow& row : r15.rows) CHECK(row.bound == 2.0);

  // cor17 against a constructed eq16 barrier: max |grad u| / phi'(0, t) ~ 1/1.2
  const CurvatureBounds flat_bounds{0.0, 0.0, 0.0};
  std::vector<double> s_grid(129), phi0(129);
  for (int i = 0; i < 129; ++i) {
    s_grid[i] = 0.5 * kPi * i / 128;
    phi0[i] = 1.2 * std::sin(s_grid[i]);
  }
  std::vector<double> t_grid(31);
  for (int j = 0; j < 31; ++j) t_grid[j] = 0.3 * j / 30;
  const Barrier solved = solve_barrier(CoefficientFamily::heat(), flat_bounds, s_grid,
                                       phi0, 0.0, t_grid);
  const GradientReport r17 = gradient_check(traj, solved, GradientMode::cor17);
  CHECK(r17.pass);
  CHECK(r17.worst_ratio == doctest::Approx(1.0 / 1.2).epsilon(5e-3));
}

TEST_CASE("Li-Yau right-hand side value") {
  const LiYauParams params{2.0, 0.0, 1.0, 2};
  CHECK(liyau_rhs(params, 1.0) == doctest::Approx(19.3137085).epsilon(1e-7));
}

TEST_CASE("Li-Yau on constant data over the flat torus") {
  const auto u0 = ScalarField::constant(Geometry::torus2(1.0, 1.0), 24, 2.0);
  const auto traj = evolve(u0, CoefficientFamily::heat(), 0.2, {0.1});
  const LiYauParams params{2.0, 0.0, 0.0, 2};
  const LiYauReport r = liyau_check(traj, CoefficientFamily::heat(), params, 0.0);
  CHECK(r.pass);
  for (const LiYauRow& row : r.rows) CHECK(row.lhs == 0.0);
}

TEST_CASE("Li-Yau on a positive circle solution") {
  const auto u0 = ScalarField::sample(Geometry::circle(2.0 * kPi), 128,
                                      [](Point p) { return 2.0 + std::sin(p.a); });
  const auto traj =
      evolve(u0, CoefficientFamily::heat(), 0.5, {0.05, 0.1, 0.2, 0.3, 0.4});
  const LiYauParams params{2.0, 0.0, 0.0, 1};
  const LiYauReport r = liyau_check(traj, CoefficientFamily::heat(), params, 0.0);
  CHECK(r.pass);
  CHECK(r.worst < 0.0);
}

TEST_CASE("Li-Yau guards") {
  const auto u0 = ScalarField::sample(Geometry::circle(2.0 * kPi), 32,
                                      [](Point p) { return 2.0 + std::sin(p.a); });
  const auto traj = evolve(u0, CoefficientFamily::heat(), 0.1, {0.05});
  const LiYauParams params{2.0, 0.0, 0.0, 1};

  CHECK_THROWS_AS(
      liyau_check(traj, CoefficientFamily::graphical_mcf(), params, 0.0), Error);
  CHECK_THROWS_AS(liyau_check(traj, CoefficientFamily::heat(),
                              LiYauParams{1.0, 0.0, 0.0, 1}, 0.0),
                  Error);

  const auto stat = ScalarField::sample(Geometry::sphere_static(1.0), 33,
                                        [](Point p) { return 2.0 + std::cos(p.a); });
  const auto traj_stat = evolve(stat, CoefficientFamily::heat(), 0.1, {0.05});
  CHECK_THROWS_AS(liyau_check(traj_stat, CoefficientFamily::heat(), params, 0.0), Error);

  const auto signed_u0 = ScalarField::sample(Geometry::circle(2.0 * kPi), 32,
                                             [](Point p) { return std::sin(p.a); });
  const auto traj_signed = evolve(signed_u0, CoefficientFamily::heat(), 0.1, {0.05});
  CHECK_THROWS_AS(liyau_check(traj_signed, CoefficientFamily::heat(), params, 0.0), Error);
}

#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "twopoint/barrier.hpp"
#include "twopoint/errors.hpp"

using namespace twopoint;

namespace {
constexpr double kPi = 3.14159265358979323846;

std::vector<double> grid(double max, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = max * i / (n - 1);
  return g;
}
}  // namespace

TEST_CASE("eval of closed forms") {
  const Barrier id = Barrier::linear(1.0, 0.0, 0.0, kPi, 1.0, 33, 5);
  const BarrierEval e = id.eval(0.8, 0.3);
  CHECK(e.phi == 0.8);
  CHECK(e.phi_s == 1.0);
  CHECK(e.phi_ss == 0.0);
  CHECK(e.phi_t == 0.0);

  const Barrier es = Barrier::exp_sine(1.0, 1.0, 1.0, 0.5 * kPi, 1.0, 33, 5);
  const BarrierEval f = es.eval(0.25 * kPi, 0.0);
  const double r = std::sqrt(2.0) / 2.0;
  CHECK(f.phi == doctest::Approx(r).epsilon(1e-14));
  CHECK(f.phi_s == doctest::Approx(r).epsilon(1e-14));
  CHECK(f.phi_ss == doctest::Approx(-r).epsilon(1e-14));
  CHECK(f.phi_t == doctest::Approx(-r).epsilon(1e-14));

  const Barrier m3 = Barrier::linear(3.0, 0.0, 0.0, 4.0, 6.0, 17, 4);
  const BarrierEval g3 = m3.eval(2.0, 5.0);
  CHECK(g3.phi == 6.0);
  CHECK(g3.phi_s == 3.0);

  CHECK_THROWS_AS(id.eval(-0.5, 0.0), Error);
  CHECK_THROWS_AS(id.eval(0.5, 2.0), Error);
}

TEST_CASE("barriers must be strictly increasing in s") {
  CHECK_THROWS_AS(Barrier::linear(0.0, 0.0, 0.0, 1.0, 1.0, 9, 3), Error);
  CHECK_THROWS_AS(Barrier::linear(-1.0, 0.0, 0.0, 1.0, 1.0, 9, 3), Error);
  // sin over a full half period dips after pi/2
  CHECK_THROWS_AS(Barrier::sine(1.0, 1.0, 3.0, 1.0, 65, 3), Error);
}

TEST_CASE("condition checks on closed-form barriers") {
  const CurvatureBounds flat{0.0, 0.0, 0.0};
  const auto heat = CoefficientFamily::heat();

  // phi = e^{-t} sin s solves phi_t = phi'': eq16 residual is exactly zero
  const Barrier es = Barrier::exp_sine(1.0, 1.0, 1.0, 0.5 * kPi, 0.5, 65, 11);
  const ConditionReport eq16 =
      verify_condition(es, heat, ConditionMode::parabolic_eq16, flat, 0.0);
  CHECK(eq16.pass);
  CHECK(eq16.worst == 0.0);

  // phi = s - t: phi_t = -1 < 0 = alpha phi''
  const Barrier st = Barrier::linear(1.0, -1.0, 0.0, 1.0, 0.5, 33, 5);
  const ConditionReport bad =
      verify_condition(st, heat, ConditionMode::parabolic_eq16, flat, 0.0);
  CHECK_FALSE(bad.pass);
  CHECK(bad.worst == -1.0);

  // phi = s: every quotient vanishes, so the strict modes fail at margin 0
  // while the non-strict eq16 inequality holds with equality
  const Barrier lin = Barrier::linear(1.0, 0.0, 0.0, 1.0, 0.5, 33, 5);
  CHECK_FALSE(
      verify_condition(lin, heat, ConditionMode::parabolic_thm14, flat, 0.0).pass);
  CHECK_FALSE(
      verify_condition(lin, heat, ConditionMode::elliptic_1_3, flat, 0.0).pass);
  const ConditionReport ok =
      verify_condition(lin, heat, ConditionMode::parabolic_eq16, flat, 0.0);
  CHECK(ok.pass);
  CHECK(ok.worst == 0.0);
}

TEST_CASE("thm14 mode refuses families without beta(t) >= 1") {
  const Barrier lin = Barrier::linear(1.0, 0.0, 0.0, 1.0, 0.5, 33, 5);
  const CurvatureBounds flat{0.0, 0.0, 0.0};
  CHECK_THROWS_AS(verify_condition(lin, CoefficientFamily::p_laplacian(3.0),
                                   ConditionMode::parabolic_thm14, flat, 0.0),
                  Error);
}

TEST_CASE("solve_barrier reproduces the heat decay of a sine profile") {
  const auto heat = CoefficientFamily::heat();
  const CurvatureBounds flat{0.0, 0.0, 0.0};
  const auto s_grid = grid(0.5 * kPi, 129);
  std::vector<double> phi0(s_grid.size());
  for (size_t i = 0; i < s_grid.size(); ++i) phi0[i] = std::sin(s_grid[i]);
  const Barrier b = solve_barrier(heat, flat, s_grid, phi0, 0.0, grid(0.1, 11));
  double worst = 0.0;
  for (double s : grid(0.5 * kPi, 200)) {
    const double exact = std::exp(-0.1) * std::sin(s);
    worst = std::max(worst, std::fabs(b.eval(s, 0.1).phi - exact));
  }
  CHECK(worst <= 1e-3);
}

TEST_CASE("linear profiles are stationary when kappa = 0") {
  const auto p3 = CoefficientFamily::p_laplacian(3.0);
  const CurvatureBounds flat{0.0, 0.0, 0.0};
  const auto s_grid = grid(1.0, 65);
  std::vector<double> phi0(s_grid.size());
  for (size_t i = 0; i < s_grid.size(); ++i) phi0[i] = 2.5 * s_grid[i];
  const Barrier b = solve_barrier(p3, flat, s_grid, phi0, 0.0, grid(0.2, 5));
  for (double s : {0.0, 0.3, 0.77, 1.0})
    CHECK(b.eval(s, 0.2).phi == doctest::Approx(2.5 * s).epsilon(1e-13));
}

TEST_CASE("construction soundness: forcing delta certifies eq16 with margin delta/2") {
  const auto p3 = CoefficientFamily::p_laplacian(3.0);
  const CurvatureBounds flat{0.0, 0.0, 0.0};
  const double delta = 1e-3;
  const auto s_grid = grid(0.5 * kPi, 65);
  std::vector<double> phi0(s_grid.size());
  for (size_t i = 0; i < s_grid.size(); ++i) phi0[i] = 1.2 * std::sin(s_grid[i]);
  const Barrier b = solve_barrier(p3, flat, s_grid, phi0, delta, grid(0.2, 21));
  const ConditionReport rep =
      verify_condition(b, p3, ConditionMode::parabolic_eq16, flat, 0.5 * delta);
  CHECK(rep.pass);
  CHECK(rep.worst == doctest::Approx(delta).epsilon(1e-9));
}

TEST_CASE("construction soundness with a curved geometry (kappa > 0)") {
  // heat has beta = 1, so the kappa term vanishes; use p-laplacian to keep it
  const auto p3 = CoefficientFamily::p_laplacian(3.0);
  const CurvatureBounds bounds{0.0, 1.0, 1.0};
  const auto s_grid = grid(1.0, 65);
  std::vector<double> phi0(s_grid.size());
  for (size_t i = 0; i < s_grid.size(); ++i) phi0[i] = 1.5 * s_grid[i];
  const Barrier b = solve_barrier(p3, bounds, s_grid, phi0, 0.0, grid(0.1, 11));
  const ConditionReport rep =
      verify_condition(b, p3, ConditionMode::parabolic_eq16, bounds, 0.0);
  CHECK(rep.pass);
}

TEST_CASE("inversion") {
  const Barrier two_s = Barrier::linear(2.0, 0.0, 0.0, 2.0, 1.0, 33, 3);
  CHECK(two_s.invert(1.4, 0.5) == doctest::Approx(0.7).epsilon(1e-12));

  const Barrier sine = Barrier::sine(1.0, 1.0, 0.5 * kPi, 1.0, 65, 3);
  CHECK(std::fabs(sine.invert(std::sqrt(2.0) / 2.0, 0.0) - 0.25 * kPi) <= 1e-10);

  std::mt19937 rng(3);
  std::uniform_real_distribution<double> uz(0.0, std::sin(1.2));
  const Barrier sine12 = Barrier::sine(1.0, 1.0, 1.2, 1.0, 65, 3);
  for (int i = 0; i < 100; ++i) {
    const double z = uz(rng);
    CHECK(std::fabs(sine12.eval(sine12.invert(z, 0.3), 0.3).phi - z) <= 1e-10);
  }

  CHECK_THROWS_AS(two_s.invert(4.5, 0.0), Error);
  try {
    two_s.invert(-0.5, 0.0);
    FAIL("expected range error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("range") != std::string::npos);
  }
}

TEST_CASE("Psi is strictly increasing and a two-sided inverse") {
  const Barrier sine12 = Barrier::sine(1.3, 1.0, 1.2, 1.0, 129, 3);
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> uz(0.0, 1.3 * std::sin(1.2));
  std::vector<double> zs(40);
  for (double& z : zs) z = uz(rng);
  std::sort(zs.begin(), zs.end());
  double prev = -1.0;
  for (double z : zs) {
    const double psi = sine12.invert(z, 0.5);
    CHECK(psi >= prev);
    prev = psi;
  }
  for (int i = 0; i <= 16; ++i) {
    const double s = 1.2 * i / 16;
    CHECK(sine12.invert(sine12.eval(s, 0.5).phi, 0.5) == doctest::Approx(s).epsilon(1e-9));
  }
}

TEST_CASE("tabulated interpolation is consistent under refinement") {
  // two derivative routes: d/ds of the phi interpolant vs interpolation of the
  // tabulated centered differences; their gap must shrink at second order
  auto route_gap = [](int n) {
    const auto s_grid = grid(1.2, n);
    std::vector<double> phi(s_grid.size());
    for (size_t i = 0; i < s_grid.size(); ++i) phi[i] = std::sin(s_grid[i]);
    const Barrier b = Barrier::from_samples(s_grid, {0.0}, phi);
    const double h = s_grid[1] - s_grid[0];
    double worst = 0.0;
    for (size_t i = 1; i + 2 < s_grid.size(); ++i) {
      const double s = s_grid[i] + 0.5 * h;
      const double route1 = b.eval(s, 0.0).phi_s;
      const double ds_i = (phi[i + 1] - phi[i - 1]) / (2.0 * h);
      const double ds_ip = (phi[i + 2] - phi[i]) / (2.0 * h);
      const double route2 = 0.5 * (ds_i + ds_ip);
      worst = std::max(worst, std::fabs(route1 - route2));
    }
    return worst;
  };
  CHECK(route_gap(33) / route_gap(65) >= 2.5);
}

TEST_CASE("csv round trip") {
  const auto s_grid = grid(1.0, 9);
  std::vector<double> phi;
  for (double t : {0.0, 0.5, 1.0})
    for (double s : s_grid) phi.push_back(2.0 * s + 0.1 * t);
  const Barrier b = Barrier::from_samples(s_grid, {0.0, 0.5, 1.0}, phi);

  std::ostringstream os;
  b.to_csv(os);
  std::istringstream is(os.str());
  const Barrier c = Barrier::from_csv(is);
  CHECK(c.s_grid() == b.s_grid());
  CHECK(c.t_grid() == b.t_grid());
  for (double s : {0.0, 0.31, 0.99})
    for (double t : {0.0, 0.35, 1.0})
      CHECK(c.eval(s, t).phi == doctest::Approx(b.eval(s, t).phi).epsilon(1e-15));

  std::istringstream bad("x,y\n1,2\n");
  CHECK_THROWS_AS(Barrier::from_csv(bad), Error);
}

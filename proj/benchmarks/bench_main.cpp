#include <benchmark/benchmark.h>

#include <cmath>

#include "twopoint/barrier.hpp"
#include "twopoint/solver.hpp"
#include "twopoint/verify.hpp"

using namespace twopoint;

namespace {

constexpr double kPi = 3.14159265358979323846;

ScalarField sin_on_circle(int n) {
  return ScalarField::sample(Geometry::circle(2.0 * kPi), n,
                             [](Point p) { return std::sin(p.a); });
}

void BM_StepCircle(benchmark::State& state) {
  const auto fam = CoefficientFamily::heat();
  ScalarField field = sin_on_circle(static_cast<int>(state.range(0)));
  const double dt = cfl_dt(field, fam);
  for (auto _ : state) {
    field = step(field, fam, dt);
    benchmark::DoNotOptimize(field.values.data());
  }
  state.SetItemsProcessed(state.iterations() * field.values.size());
}
BENCHMARK(BM_StepCircle)->Arg(256)->Arg(1024)->Arg(4096);

void BM_StepTorus(benchmark::State& state) {
  const auto fam = CoefficientFamily::graphical_mcf();
  const int n = static_cast<int>(state.range(0));
  ScalarField field = ScalarField::sample(Geometry::torus2(1.0, 1.0), n, [](Point p) {
    return std::sin(2.0 * kPi * p.a) * std::sin(2.0 * kPi * p.b);
  });
  const double dt = cfl_dt(field, fam);
  for (auto _ : state) {
    field = step(field, fam, dt);
    benchmark::DoNotOptimize(field.values.data());
  }
  state.SetItemsProcessed(state.iterations() * field.values.size());
}
BENCHMARK(BM_StepTorus)->Arg(32)->Arg(64)->Arg(128);

void BM_StepSphere(benchmark::State& state) {
  const auto fam = CoefficientFamily::heat();
  ScalarField field = ScalarField::sample(Geometry::sphere_shrinking(1.0),
                                          static_cast<int>(state.range(0)),
                                          [](Point p) { return 2.0 + std::cos(p.a); });
  for (auto _ : state) {
    field = step(field, fam, cfl_dt(field, fam));
    benchmark::DoNotOptimize(field.values.data());
    if (field.t > 0.4) field.t = 0.0;  // stay inside the horizon
  }
  state.SetItemsProcessed(state.iterations() * field.values.size());
}
BENCHMARK(BM_StepSphere)->Arg(256)->Arg(1024);

void BM_TorusDistance(benchmark::State& state) {
  const Geometry torus = Geometry::torus2(1.0, 1.3);
  double acc = 0.0;
  double x = 0.0;
  for (auto _ : state) {
    x += 0.0137;
    if (x > 1.0) x -= 1.0;
    acc += torus.distance(Point{x, 0.4}, Point{0.9, 1.1}, 0.0);
  }
  benchmark::DoNotOptimize(acc);
}
BENCHMARK(BM_TorusDistance);

void BM_TwoPointPsi(benchmark::State& state) {
  const auto fam = CoefficientFamily::heat();
  const auto traj = evolve(sin_on_circle(static_cast<int>(state.range(0))), fam, 0.02,
                           {0.01});
  const Barrier barrier = Barrier::linear(2.0, 0.0, -2.0, kPi, 0.02, 129, 3);
  const int threads = static_cast<int>(state.range(1));
  for (auto _ : state) {
    const TwoPointReport report =
        two_point_check(traj, barrier, TwoPointMode::psi_form, fam, 1.0, threads);
    benchmark::DoNotOptimize(report.worst);
  }
}
BENCHMARK(BM_TwoPointPsi)->Args({256, 1})->Args({256, 4})->Args({1024, 1})->Args({1024, 4});

void BM_BarrierEval(benchmark::State& state) {
  std::vector<double> s_grid(129), phi0(129);
  for (int i = 0; i < 129; ++i) {
    s_grid[i] = 0.5 * kPi * i / 128;
    phi0[i] = 1.2 * std::sin(s_grid[i]);
  }
  std::vector<double> t_grid(21);
  for (int j = 0; j < 21; ++j) t_grid[j] = 0.2 * j / 20;
  const Barrier barrier = solve_barrier(CoefficientFamily::heat(),
                                        CurvatureBounds{0.0, 0.0, 0.0}, s_grid, phi0,
                                        0.0, t_grid);
  double s = 0.0, acc = 0.0;
  for (auto _ : state) {
    s += 0.0113;
    if (s > 1.5) s -= 1.5;
    acc += barrier.eval(s, 0.1).phi;
  }
  benchmark::DoNotOptimize(acc);
}
BENCHMARK(BM_BarrierEval);

void BM_SolveBarrier(benchmark::State& state) {
  std::vector<double> s_grid(65), phi0(65);
  for (int i = 0; i < 65; ++i) {
    s_grid[i] = 0.5 * kPi * i / 64;
    phi0[i] = 1.2 * std::sin(s_grid[i]);
  }
  std::vector<double> t_grid(11);
  for (int j = 0; j < 11; ++j) t_grid[j] = 0.1 * j / 10;
  for (auto _ : state) {
    const Barrier barrier = solve_barrier(CoefficientFamily::heat(),
                                          CurvatureBounds{0.0, 0.0, 0.0}, s_grid, phi0,
                                          0.0, t_grid);
    benchmark::DoNotOptimize(barrier.s_grid().data());
  }
}
BENCHMARK(BM_SolveBarrier);

}  // namespace

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "torusbound/bounds.hpp"
#include "torusbound/conformal.hpp"
#include "torusbound/galerkin.hpp"
#include "torusbound/optim.hpp"
#include "torusbound/specfun.hpp"
#include "torusbound/torus.hpp"

using namespace torusbound;

static void BM_EllipticE(benchmark::State& state) {
  double k = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(elliptic_e(k));
    k = k < 0.999 ? k + 1e-3 : 0.0;
  }
}
BENCHMARK(BM_EllipticE);

static void BM_Spectrum(benchmark::State& state) {
  const TorusParams t{0.31, 2.7};
  for (auto _ : state) benchmark::DoNotOptimize(spectrum(t, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_Spectrum)->Arg(10)->Arg(100)->Arg(1000);

static void BM_AreaFunctional(benchmark::State& state) {
  const auto psi = Immersion::psi_ab(0.3, 1.2);
  const ConformalPoint g({0.2, -0.1, 0.05, 0.1, -0.15, 0.05});
  const QuadratureSpec spec{static_cast<int>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(area_functional(g, psi, spec));
}
BENCHMARK(BM_AreaFunctional)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

static void BM_AreaClosedForm(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(area_closed_form(2.0, {0.3, 0.2}));
}
BENCHMARK(BM_AreaClosedForm);

static void BM_SupAreaS3(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(sup_area_s3(2.0));
}
BENCHMARK(BM_SupAreaS3)->Unit(benchmark::kMillisecond);

static void BM_SupAreaS5(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(sup_area_s5(0.0, 2.0));
}
BENCHMARK(BM_SupAreaS5)->Unit(benchmark::kMillisecond)->Iterations(3);

static void BM_ConformalLambda1(benchmark::State& state) {
  const TorusParams t{0.2, 1.3};
  const auto omega = ConformalFactor::analytic(
      [](double x, double y) { return 1.0 + 0.2 * std::cos(2 * std::numbers::pi * x) * std::sin(2 * std::numbers::pi * y); });
  for (auto _ : state) benchmark::DoNotOptimize(conformal_lambda1(t, omega, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_ConformalLambda1)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

static void BM_BoundSweep(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(bound_sweep({}));
}
BENCHMARK(BM_BoundSweep)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "specdiff/experiments.hpp"
#include "specdiff/jacobi.hpp"
#include "specdiff/quadrature.hpp"
#include "specdiff/spectral.hpp"

using namespace specdiff;

namespace {

void BM_JacobiEval(benchmark::State& state) {
  const JacobiParams p(1.0, 0.0);
  const int k = static_cast<int>(state.range(0));
  double x = -0.9;
  for (auto _ : state) {
    benchmark::DoNotOptimize(jacobi_eval(p, k, x));
    x = x > 0.9 ? -0.9 : x + 1e-3;
  }
  state.SetComplexityN(k);
}
BENCHMARK(BM_JacobiEval)->RangeMultiplier(4)->Range(16, 4096)->Complexity(benchmark::oN);

void BM_GaussJacobiRule(benchmark::State& state) {
  const JacobiParams p(0.5, -0.25);
  const int q = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(gauss_jacobi_rule(p, q));
}
BENCHMARK(BM_GaussJacobiRule)->RangeMultiplier(4)->Range(16, 1024)->Unit(benchmark::kMicrosecond);

void BM_CoefficientsBatch(benchmark::State& state) {
  const auto f = SingularFunction::abs_power(0.25, 5.0);
  const JacobiParams p(1.0, 0.0);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(coefficients_batch(f, p, n));
}
BENCHMARK(BM_CoefficientsBatch)->RangeMultiplier(4)->Range(64, 1024)->Unit(benchmark::kMillisecond);

std::vector<double> lobatto_samples(int n) {
  std::vector<double> v;
  for (double x : cheb_lobatto_points(n)) v.push_back(std::pow(std::abs(x - 1.0 / 3.0), 3.0));
  return v;
}

void BM_ChebCoefficientsFft(benchmark::State& state) {
  const auto v = lobatto_samples(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(cheb_lobatto_coefficients(v));
}
BENCHMARK(BM_ChebCoefficientsFft)->RangeMultiplier(4)->Range(64, 4096);

void BM_ChebCoefficientsDirect(benchmark::State& state) {
  const auto v = lobatto_samples(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(cheb_lobatto_coefficients_direct(v));
}
BENCHMARK(BM_ChebCoefficientsDirect)->RangeMultiplier(4)->Range(64, 4096);

void BM_ErrorCurve(benchmark::State& state) {
  const auto suite = figure_suite(2, 1);
  const auto n_list = default_n_grid(suite.range.n_min, suite.range.n_max);
  for (auto _ : state) {
    benchmark::DoNotOptimize(error_curves(suite.f, suite.method, 1, suite.points, n_list));
  }
}
BENCHMARK(BM_ErrorCurve)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include "qso/fixed_points.hpp"
#include "qso/harness/random.hpp"
#include "qso/spectral.hpp"

namespace {

using namespace qso;

struct Instance {
  CoefficientMatrix a;
  SimplexPoint x;
};

Instance make_instance(std::size_t m) {
  harness::Rng rng(42 + m);
  return {harness::random_coefficients(rng, m), harness::random_state(rng, m)};
}

void BM_ApplyW(benchmark::State& state) {
  const auto [a, x] = make_instance(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(apply_w(a, x));
}
BENCHMARK(BM_ApplyW)->RangeMultiplier(2)->Range(2, 64);

void BM_ApplyWStochasticForm(benchmark::State& state) {
  const auto [a, x] = make_instance(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(apply_w_stochastic_form(a, x));
}
BENCHMARK(BM_ApplyWStochasticForm)->RangeMultiplier(2)->Range(2, 64);

void BM_CubicApply(benchmark::State& state) {
  const auto [a, x] = make_instance(static_cast<std::size_t>(state.range(0)));
  const CubicMatrix p = build_cubic_matrix(a);
  for (auto _ : state) benchmark::DoNotOptimize(p.apply(x.coords()));
}
BENCHMARK(BM_CubicApply)->RangeMultiplier(2)->Range(2, 16);

void BM_BuildBc(benchmark::State& state) {
  const auto [a, x] = make_instance(static_cast<std::size_t>(state.range(0)));
  const Fiber fiber = fiber_of(x).fiber;
  for (auto _ : state) benchmark::DoNotOptimize(build_bc(a, fiber));
}
BENCHMARK(BM_BuildBc)->RangeMultiplier(2)->Range(2, 64);

void BM_EigenAll(benchmark::State& state) {
  const auto [a, x] = make_instance(static_cast<std::size_t>(state.range(0)));
  const ReducedMatrix b = build_bc(a, fiber_of(x).fiber);
  for (auto _ : state) benchmark::DoNotOptimize(eigen_all(b));
}
BENCHMARK(BM_EigenAll)->RangeMultiplier(2)->Range(2, 64);

void BM_PredictLimit(benchmark::State& state) {
  const auto [a, x] = make_instance(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(predict_limit(a, x));
}
BENCHMARK(BM_PredictLimit)->RangeMultiplier(2)->Range(2, 64);

void BM_FixedPointSet(benchmark::State& state) {
  const auto [a, x] = make_instance(static_cast<std::size_t>(state.range(0)));
  const Fiber fiber = fiber_of(x).fiber;
  for (auto _ : state) benchmark::DoNotOptimize(fixed_point_set(a, fiber));
}
BENCHMARK(BM_FixedPointSet)->RangeMultiplier(2)->Range(2, 64);

// Simulation to convergence versus the closed-form limit.
void BM_SimulateToLimit(benchmark::State& state) {
  const auto [a, x0] = make_instance(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    SimplexPoint x = x0;
    for (int k = 0; k < 1'000'000; ++k) {
      SimplexPoint next = apply_w(a, x);
      const double step = sup_norm(next.coords() - x.coords());
      x = std::move(next);
      if (step < 1e-12) break;
    }
    benchmark::DoNotOptimize(x);
  }
}
BENCHMARK(BM_SimulateToLimit)->RangeMultiplier(2)->Range(2, 16);

}  // namespace

BENCHMARK_MAIN();

// Microbenchmarks for the hot paths: symbol quadrature, spectral transforms,
// resolvent solves, physical-space application, and maximal functions.

#include <benchmark/benchmark.h>

#include "nonloc/apply.hpp"
#include "nonloc/fieldops.hpp"
#include "nonloc/kernel.hpp"
#include "nonloc/operator_spec.hpp"
#include "nonloc/solver.hpp"
#include "nonloc/symbol.hpp"

namespace {

using namespace nonloc;

// psi is cached per (kernel label, |xi|); nudging the magnitude every
// iteration keeps the quadrature on the clock instead of the cache.
void BM_psi_stable(benchmark::State& state) {
  const RadialJumpKernel k = stable_kernel(1, 0.5);
  double q = 1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(psi(k, 1, q));
    q = q < 1e3 ? q * 1.000001 : 1.0;
  }
}
BENCHMARK(BM_psi_stable);

void BM_psi_subordinate(benchmark::State& state) {
  const RadialJumpKernel k =
      subordinate_kernel(bernstein_stable_sum({0.3, 0.45}), 1);
  double q = 1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(psi(k, 1, q));
    q = q < 1e3 ? q * 1.000001 : 1.0;
  }
}
BENCHMARK(BM_psi_subordinate);

// Full table build; a fresh coefficient seed per iteration defeats the
// (spec, grid) cache, so this measures the quadrature sweep.
void BM_symbol_build(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const GridSpec g{1, n, 64.0};
  const RadialJumpKernel k = stable_kernel(1, 0.5);
  std::uint64_t seed = 1;
  for (auto _ : state) {
    const CoefficientField a = coefficient_random(1, seed++);
    const OperatorSpec spec = make_spec(1, k, a, 0.5, OperatorVariant::L);
    benchmark::DoNotOptimize(full_symbol(spec, g));
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_symbol_build)->Arg(64)->Arg(256);

void BM_resolvent_solve(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const GridSpec g{1, n, 64.0};
  const OperatorSpec spec = make_spec(1, stable_kernel(1, 0.5),
                                      coefficient_random(1, 11), 0.5,
                                      OperatorVariant::L);
  const SymbolTable table = full_symbol(spec, g);
  const GridFunction f = random_band_limited(g, 3);
  for (auto _ : state)
    benchmark::DoNotOptimize(resolvent_solve(table, f, 1.0));
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_resolvent_solve)->Arg(512)->Arg(4096);

// Steady-state cost with a warm transfer cache: interpolation plus shell
// sums, not the one-time moment table.
void BM_apply_direct(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const GridSpec g{1, n, 64.0};
  const OperatorSpec spec = make_spec(1, stable_kernel(1, 0.5),
                                      coefficient_random(1, 11), 0.5,
                                      OperatorVariant::L);
  const GridFunction u = random_band_limited(g, 3);
  (void)apply_direct(spec, u);
  for (auto _ : state) benchmark::DoNotOptimize(apply_direct(spec, u));
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_apply_direct)->Arg(128);

void BM_dft_roundtrip(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const GridSpec g{1, n, 64.0};
  const GridFunction u = random_band_limited(g, 5);
  for (auto _ : state) benchmark::DoNotOptimize(idft(dft(u), g));
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_dft_roundtrip)->Arg(512)->Arg(4096);

void BM_maximal_function(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const GridSpec g{1, n, 64.0};
  const GridFunction u = random_band_limited(g, 5);
  for (auto _ : state)
    benchmark::DoNotOptimize(maximal_function(u, n / 2));
}
BENCHMARK(BM_maximal_function)->Arg(512);

}  // namespace

BENCHMARK_MAIN();

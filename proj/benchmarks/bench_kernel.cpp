#include <benchmark/benchmark.h>

#include "tanhops/corpus.hpp"
#include "tanhops/fractional.hpp"
#include "tanhops/operators.hpp"

using namespace tanhops;

static void BM_SymmetrizedKernel(benchmark::State& state) {
  const ActivationParams p(2.0, 1.0);
  double x = -8.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(symmetrized_kernel(p, x));
    x += 1e-4;
    if (x > 8.0) x = -8.0;
  }
}
BENCHMARK(BM_SymmetrizedKernel);

static void BM_ApplyBasic(benchmark::State& state) {
  const ActivationParams p(1.5, 1.0);
  OperatorSpec spec;
  spec.n = static_cast<int>(state.range(0));
  const TestFunction& f = find_entry("sin")->function;
  for (auto _ : state) {
    benchmark::DoNotOptimize(apply_basic(p, spec, f, 0.3).value);
  }
}
BENCHMARK(BM_ApplyBasic)->Arg(32)->Arg(256)->Arg(2048);

static void BM_ApplyKantorovich(benchmark::State& state) {
  const ActivationParams p(1.5, 1.0);
  OperatorSpec spec;
  spec.kind = OperatorKind::kantorovich;
  spec.n = static_cast<int>(state.range(0));
  const TestFunction& f = find_entry("gauss")->function;
  for (auto _ : state) {
    benchmark::DoNotOptimize(apply_kantorovich(p, spec, f, 0.3).value);
  }
}
BENCHMARK(BM_ApplyKantorovich)->Arg(32)->Arg(256);

static void BM_CaputoLeft(benchmark::State& state) {
  const TestFunction f = power_function(3, 0.0);
  const FractionalOrder order(0.5);
  const CaputoScheme scheme(static_cast<int>(state.range(0)), 2.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(caputo_left(f, order, 0.0, 1.0, scheme));
  }
}
BENCHMARK(BM_CaputoLeft)->Arg(256)->Arg(1024)->Arg(4096);

BENCHMARK_MAIN();

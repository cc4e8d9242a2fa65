#include <benchmark/benchmark.h>

#include <vector>

#include "edgevote/vote_model.hpp"

using namespace edgevote;

static void ExactErrorThreeGroup(benchmark::State& state) {
  const std::int64_t n = state.range(0);
  const Composition comp{n, n / 100, n / 200};
  for (auto _ : state) {
    benchmark::DoNotOptimize(exact_error(comp, Rational(1, 10)));
  }
  state.SetComplexityN(n);
}
BENCHMARK(ExactErrorThreeGroup)->RangeMultiplier(10)->Range(1000, 100000)->Complexity();

static void ExactErrorSingleGroup(benchmark::State& state) {
  const std::int64_t n = state.range(0);
  const Composition comp{n, n, 0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(exact_error(comp, Rational(1, 10)));
  }
}
BENCHMARK(ExactErrorSingleGroup)->Arg(100000);

static void ExactErrorHetero(benchmark::State& state) {
  const std::int64_t n = state.range(0);
  std::vector<double> probs(n);
  for (std::int64_t i = 0; i < n; ++i) probs[i] = 0.5 + 0.05 * (i % 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(exact_error_hetero(probs));
  }
  state.SetComplexityN(n);
}
BENCHMARK(ExactErrorHetero)->RangeMultiplier(4)->Range(64, 4096)->Complexity();

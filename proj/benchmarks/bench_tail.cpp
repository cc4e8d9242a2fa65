#include <benchmark/benchmark.h>

#include "edgevote/tail_oracle.hpp"

using namespace edgevote;

static void ExactUpperTail(benchmark::State& state) {
  const std::int64_t l = state.range(0);
  const TailQuery q{l, Rational(1, 2), l / 2 + l / 20, false};
  for (auto _ : state) {
    benchmark::DoNotOptimize(exact_upper_tail(q));
  }
  state.SetComplexityN(l);
}
BENCHMARK(ExactUpperTail)->RangeMultiplier(10)->Range(1000, 1000000)->Complexity();

static void AuditHoeffdingGrid(benchmark::State& state) {
  AuditGrid grid;
  for (std::int64_t l = 4; l <= 64; ++l) grid.ells.push_back(l);
  grid.etas = {Rational(1, 20), Rational(1, 10), Rational(1, 5)};
  grid.ps = {Rational(1, 4), Rational(1, 2)};
  for (auto _ : state) {
    benchmark::DoNotOptimize(audit_bound(BoundId::hoeffding_upper, grid));
  }
}
BENCHMARK(AuditHoeffdingGrid);

BENCHMARK_MAIN();

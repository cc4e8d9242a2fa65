#include <benchmark/benchmark.h>

#include "edgevote/mbeta_learner.hpp"
#include "edgevote/synth_source.hpp"
#include "edgevote/vote_model.hpp"

using namespace edgevote;

static void DrawDataset(benchmark::State& state) {
  const std::int64_t n = state.range(0);
  const SourceSpec spec = make_spec(n, n / 100, Rational(1, 10), Polarity::half_half);
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(draw_dataset(spec, 100, seed++));
  }
  state.SetItemsProcessed(state.iterations() * n * 100);
}
BENCHMARK(DrawDataset)->RangeMultiplier(10)->Range(1000, 100000);

static void EdgeCountAndSelect(benchmark::State& state) {
  const std::int64_t n = state.range(0);
  const SourceSpec spec = make_spec(n, n / 100, Rational(1, 10), Polarity::half_half);
  const Dataset ds = draw_dataset(spec, 100, 3);
  for (auto _ : state) {
    const EdgeTable table = empirical_edges(ds);
    benchmark::DoNotOptimize(select_model(table, Rational(13, 100)));
  }
}
BENCHMARK(EdgeCountAndSelect)->RangeMultiplier(10)->Range(1000, 100000);

static void McError(benchmark::State& state) {
  const SourceSpec spec = make_spec(256, 64, Rational(1, 5), Polarity::all_positive, 1);
  VoteModel model;
  for (std::int64_t v = 0; v < 128; ++v) model.features.push_back({v, false});
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mc_error(model, spec, 10000, seed++));
  }
  state.SetItemsProcessed(state.iterations() * 10000 * 128);
}
BENCHMARK(McError);

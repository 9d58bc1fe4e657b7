#include <benchmark/benchmark.h>

#include "perc3/clusters.hpp"
#include "perc3/geometry.hpp"
#include "perc3/rng.hpp"
#include "perc3/traveltime.hpp"
#include "perc3/walks.hpp"

using namespace perc3;

static void BM_Sample(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::uint64_t seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(sample_configuration(n, 0.6, seed++));
  state.SetItemsProcessed(state.iterations() * (2 * n + 1) * (2 * n + 1) * (2 * n + 1));
}
BENCHMARK(BM_Sample)->Arg(16)->Arg(64);

static void BM_TravelField(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Configuration cfg = sample_configuration(n, 0.6, 3);
  for (auto _ : state) benchmark::DoNotOptimize(travel_field(cfg, cfg.box(), {0, 0, 0}).max_distance());
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cfg.size()));
}
BENCHMARK(BM_TravelField)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

static void BM_LabelClusters(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Configuration cfg = sample_configuration(n, 0.6, 4);
  for (auto _ : state) benchmark::DoNotOptimize(label_open_clusters(cfg).count());
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cfg.size()));
}
BENCHMARK(BM_LabelClusters)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

static void BM_EngineNearest(benchmark::State& state) {
  const Configuration cfg = sample_configuration(64, 0.6, 5);
  TravelEngine engine(cfg);
  SplitMix64 rng(1);
  for (auto _ : state) {
    const Site a = cfg.site(rng.below(cfg.size())), b = cfg.site(rng.below(cfg.size()));
    const Site target[1] = {b};
    benchmark::DoNotOptimize(engine.nearest_in_box(a, target).cost);
  }
}
BENCHMARK(BM_EngineNearest)->Unit(benchmark::kMicrosecond);

static void BM_ThickenedOffsets(benchmark::State& state) {
  const std::int64_t r2 = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(thickened_offsets(r2, TriangleIndex::identity(), 3.0).size());
}
BENCHMARK(BM_ThickenedOffsets)->Arg(100)->Arg(10000)->Arg(360000)->Unit(benchmark::kMillisecond);

static void BM_Coverage(benchmark::State& state) {
  const std::int64_t r2 = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(coverage_check(r2, 3.0).holds);
}
BENCHMARK(BM_Coverage)->Arg(1000)->Arg(9998)->Unit(benchmark::kMillisecond);

static void BM_Canonicalize(benchmark::State& state) {
  SplitMix64 rng(2);
  for (auto _ : state) {
    const Vec3 v{rng.uniform() - 0.5, rng.uniform() - 0.5, rng.uniform() - 0.5};
    benchmark::DoNotOptimize(canonicalize_direction(v).triangle.ordinal());
  }
}
BENCHMARK(BM_Canonicalize);

static void BM_TheoremPath(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Configuration cfg = sample_configuration(n, 0.6, 6);
  const WalkBudget b = WalkBudget::desk(n, 9);
  SplitMix64 rng(3);
  for (auto _ : state) {
    const Site x = cfg.site(rng.below(cfg.size())), y = cfg.site(rng.below(cfg.size()));
    benchmark::DoNotOptimize(theorem_path(cfg, x, y, b).total_cost);
  }
}
BENCHMARK(BM_TheoremPath)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

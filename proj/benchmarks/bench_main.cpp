#include <benchmark/benchmark.h>

#include <memory>

#include "blockmap/decomposition.hpp"
#include "blockmap/gw_tree.hpp"
#include "blockmap/model_sampler.hpp"
#include "blockmap/quadrangulation_sampler.hpp"
#include "blockmap/series.hpp"
#include "blockmap/tutte.hpp"

using namespace blockmap;

static void BM_SolveBivariate(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(solve_bivariate(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_SolveBivariate)->Arg(50)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

static void BM_UniformQuadrangulation(benchmark::State& state) {
  Rng rng(1);
  for (auto _ : state) benchmark::DoNotOptimize(sample_uniform_quadrangulation(state.range(0), rng));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_UniformQuadrangulation)->RangeMultiplier(8)->Range(1 << 10, 1 << 17)->Unit(benchmark::kMillisecond);

// u encoded in tenths.
static void BM_TreeSampler(benchmark::State& state) {
  const double u = static_cast<double>(state.range(0)) / 10;
  const auto n = state.range(1);
  const TreeSampler sampler(std::make_shared<OffspringDistribution>(u), n, default_tree_method(u, n));
  Rng rng(2);
  for (auto _ : state) benchmark::DoNotOptimize(sampler.sample(rng));
}
BENCHMARK(BM_TreeSampler)
    ->Args({16, 1 << 14})
    ->Args({18, 1 << 14})
    ->Args({50, 1 << 14})
    ->Args({50, 1 << 17})
    ->Unit(benchmark::kMillisecond);

static void BM_DecomposeQuadrangulation(benchmark::State& state) {
  Rng rng(3);
  const Quadrangulation q = sample_uniform_quadrangulation(state.range(0), rng);
  for (auto _ : state) benchmark::DoNotOptimize(block_decompose(q));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_DecomposeQuadrangulation)->RangeMultiplier(8)->Range(1 << 10, 1 << 17)->Unit(benchmark::kMillisecond);

static void BM_TutteRoundTrip(benchmark::State& state) {
  Rng rng(4);
  const HalfEdgeMap m = tutte_inverse(sample_uniform_quadrangulation(state.range(0), rng));
  for (auto _ : state) benchmark::DoNotOptimize(tutte_inverse(tutte_angular(m)));
}
BENCHMARK(BM_TutteRoundTrip)->Arg(1 << 12)->Arg(1 << 16)->Unit(benchmark::kMillisecond);

static void BM_ModelSample(benchmark::State& state) {
  SamplerConfig c;
  c.u = static_cast<double>(state.range(0)) / 10;
  c.n = state.range(1);
  c.kind = ObjectKind::Quad;
  c.tree_method = c.u == 1 ? TreeMethod::UniformDirect : default_tree_method(c.u, c.n);
  ModelSampler sampler(c);
  Rng rng(5);
  for (auto _ : state) benchmark::DoNotOptimize(sampler.sample(rng));
}
BENCHMARK(BM_ModelSample)->Args({10, 1 << 14})->Args({18, 1 << 14})->Args({50, 1 << 14})->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();

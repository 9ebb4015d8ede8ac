#include <benchmark/benchmark.h>

#include "fragtree/gwtree.hpp"
#include "fragtree/intensity.hpp"
#include "fragtree/prim.hpp"
#include "fragtree/random.hpp"

using namespace fragtree;

static void BM_ConditionedTree(benchmark::State& state) {
  const auto law = OffspringLaw::geometric_half();
  auto rng = make_stream(1, 0);
  const auto n = static_cast<std::int32_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sample_conditioned_gw(law, n, rng));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ConditionedTree)->RangeMultiplier(8)->Range(1 << 10, 1 << 16);

static void BM_ConditionedTreeStable(benchmark::State& state) {
  const auto law = OffspringLaw::stable_tail(1.5);
  auto rng = make_stream(2, 0);
  const auto n = static_cast<std::int32_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sample_conditioned_gw(law, n, rng));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ConditionedTreeStable)->RangeMultiplier(8)->Range(1 << 10, 1 << 16);

static void BM_PrimOrder(benchmark::State& state) {
  auto rng = make_stream(3, 0);
  const auto n = static_cast<std::int32_t>(state.range(0));
  const auto tree = sample_conditioned_gw(OffspringLaw::geometric_half(), n, rng);
  const auto weights = random_edge_weights(n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(prim_order(tree, weights));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_PrimOrder)->RangeMultiplier(8)->Range(1 << 10, 1 << 16);

static void BM_FragPrimPath(benchmark::State& state) {
  auto rng = make_stream(4, 0);
  const auto n = static_cast<std::int32_t>(state.range(0));
  const auto tree = sample_conditioned_gw(OffspringLaw::geometric_half(), n, rng);
  const auto weights = random_edge_weights(n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(frag_prim_path(tree, weights, 0.97));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_FragPrimPath)->RangeMultiplier(8)->Range(1 << 10, 1 << 16);

static void BM_StableDensity(benchmark::State& state) {
  const StableDensityEvaluator eval(1.5);
  double z = -3.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval(1.0, z));
    z = z > 6.0 ? -3.0 : z + 0.37;
  }
}
BENCHMARK(BM_StableDensity);

BENCHMARK_MAIN();

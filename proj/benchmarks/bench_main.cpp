#include <benchmark/benchmark.h>

#include <random>

#include "sawgrid/filtrations.hpp"
#include "sawgrid/mpgf.hpp"
#include "sawgrid/persistence.hpp"
#include "sawgrid/saw.hpp"

using namespace sawgrid;

namespace {

// Erdos-Renyi graph with mean degree about `degree`.
Graph random_graph(std::size_t n, double degree, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(degree / static_cast<double>(n));
  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v)
      if (coin(rng)) edges.push_back({u, v});
  return Graph(n, std::move(edges));
}

void BM_Betweenness(benchmark::State& state) {
  const Graph g = random_graph(static_cast<std::size_t>(state.range(0)), 4.0, 1);
  for (auto _ : state) benchmark::DoNotOptimize(betweenness_values(g));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Betweenness)->RangeMultiplier(4)->Range(64, 4096)->Complexity();

void BM_Closeness(benchmark::State& state) {
  const Graph g = random_graph(static_cast<std::size_t>(state.range(0)), 4.0, 2);
  for (auto _ : state) benchmark::DoNotOptimize(closeness_values(g));
}
BENCHMARK(BM_Closeness)->RangeMultiplier(4)->Range(64, 4096);

void BM_Hits(benchmark::State& state) {
  const Graph g = random_graph(static_cast<std::size_t>(state.range(0)), 6.0, 3);
  for (auto _ : state) benchmark::DoNotOptimize(hits_values(g));
}
BENCHMARK(BM_Hits)->RangeMultiplier(4)->Range(64, 4096);

void BM_Persistence(benchmark::State& state) {
  const Graph g = random_graph(static_cast<std::size_t>(state.range(0)), 4.0, 4);
  const NodeValues f = degree_values(g);
  const ComplexMode mode = state.range(1) ? ComplexMode::kClique2 : ComplexMode::kGraph;
  const FiltrationSpec spec(f, make_thresholds(f, 10), Direction::kSublevel, mode);
  for (auto _ : state) {
    benchmark::DoNotOptimize(persistence_dim0(g, spec));
    benchmark::DoNotOptimize(persistence_dim1(g, spec));
  }
}
BENCHMARK(BM_Persistence)->ArgsProduct({{256, 1024, 4096}, {0, 1}});

void BM_BettiCurvesVsOracle(benchmark::State& state) {
  const Graph g = random_graph(512, 4.0, 5);
  const NodeValues f = closeness_values(g);
  const FiltrationSpec spec(f, make_thresholds(f, 50));
  for (auto _ : state) {
    if (state.range(0)) {
      benchmark::DoNotOptimize(oracle_counts(g, spec));
    } else {
      benchmark::DoNotOptimize(betti_curves(g, spec));
    }
  }
}
BENCHMARK(BM_BettiCurvesVsOracle)->Arg(0)->Arg(1);

void BM_Mpgf(benchmark::State& state) {
  const Graph g = random_graph(static_cast<std::size_t>(state.range(0)), 4.0, 6);
  const NodeValues f = degree_values(g);
  const NodeValues h = closeness_values(g);
  for (auto _ : state) benchmark::DoNotOptimize(compute_mpgf2(g, f, h, 10, 10));
}
BENCHMARK(BM_Mpgf)->RangeMultiplier(4)->Range(64, 4096);

void BM_SawSignature(benchmark::State& state) {
  const Graph g = random_graph(1024, 4.0, 7);
  const NodeValues f = degree_values(g);
  const FiltrationSpec spec(f, make_thresholds(f, 10));
  const PersistenceDiagram pd = persistence_dim0(g, spec);
  const SawFunction s = SawFunction::from_diagram(pd);
  for (auto _ : state) benchmark::DoNotOptimize(signature(s, 100));
}
BENCHMARK(BM_SawSignature);

}  // namespace
BENCHMARK_MAIN();

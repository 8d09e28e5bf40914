#include <benchmark/benchmark.h>

#include <random>

#include "ontoekg/evaluation.hpp"
#include "ontoekg/llm/mock.hpp"
#include "ontoekg/matching.hpp"

namespace {

ontoekg::BipartiteAdjacency random_graph(std::size_t n, double density, unsigned seed) {
  std::mt19937 rng(seed);
  std::bernoulli_distribution edge(density);
  ontoekg::BipartiteAdjacency adj(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (edge(rng)) adj[i].push_back(j);
    }
  }
  return adj;
}

void BM_HopcroftKarp(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto adj = random_graph(n, 0.05, 1);
  for (auto _ : state) benchmark::DoNotOptimize(ontoekg::hopcroft_karp(adj, n));
}
BENCHMARK(BM_HopcroftKarp)->Range(64, 2048);

void BM_LexicographicMatching(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto adj = random_graph(n, 0.05, 2);
  for (auto _ : state) benchmark::DoNotOptimize(ontoekg::lexicographic_max_matching(adj, n));
}
BENCHMARK(BM_LexicographicMatching)->Range(64, 512);

void BM_FuzzyScore(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937 rng(3);
  std::uniform_int_distribution<std::size_t> pick(0, n / 2);
  auto triples = [&] {
    std::vector<ontoekg::EvalTriple> out;
    for (std::size_t i = 0; i < n; ++i) {
      out.push_back({"Class " + std::to_string(pick(rng)), "subClassOf",
                     "Class " + std::to_string(pick(rng))});
    }
    return out;
  };
  const auto pred = triples();
  const auto gold = triples();
  ontoekg::llm::HashEmbedder embedder(1024);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ontoekg::fuzzy_match_score(pred, gold, embedder, 0.94));
  }
}
BENCHMARK(BM_FuzzyScore)->Range(32, 256);

}  // namespace

BENCHMARK_MAIN();

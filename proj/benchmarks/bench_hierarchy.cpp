#include <benchmark/benchmark.h>

#include <random>

#include "ontoekg/entailment.hpp"

namespace {

void BM_BuildHierarchy(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  ontoekg::Ontology o{ontoekg::Iri(ontoekg::kDefaultBaseIri)};
  for (std::size_t i = 0; i < n; ++i) o.add_class(ontoekg::Label("Class " + std::to_string(i)), "");
  std::mt19937 rng(7);
  std::bernoulli_distribution coin(0.1);
  std::vector<ontoekg::SubsumptionVerdict> verdicts;
  for (const auto& a : o.classes) {
    for (const auto& b : o.classes) {
      if (a.iri == b.iri) continue;
      verdicts.push_back({ontoekg::SubsumptionQuery(a.label, "", b.label, ""), coin(rng), "r"});
    }
  }
  for (auto _ : state) benchmark::DoNotOptimize(ontoekg::build_hierarchy(verdicts, o.classes));
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations() * verdicts.size()));
}
BENCHMARK(BM_BuildHierarchy)->RangeMultiplier(2)->Range(16, 128);

void BM_CandidatePairs(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  ontoekg::Ontology o{ontoekg::Iri(ontoekg::kDefaultBaseIri)};
  for (std::size_t i = 0; i < n; ++i) o.add_class(ontoekg::Label("Class " + std::to_string(i)), "");
  for (auto _ : state) benchmark::DoNotOptimize(ontoekg::generate_candidate_pairs(o.classes, 2000));
}
BENCHMARK(BM_CandidatePairs)->Range(16, 256);

}  // namespace

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include <random>

#include "ontoekg/rdf.hpp"
#include "ontoekg/turtle.hpp"

namespace {

ontoekg::Ontology sample(std::size_t n) {
  ontoekg::Ontology o{ontoekg::Iri(ontoekg::kDefaultBaseIri)};
  std::vector<ontoekg::Iri> classes;
  for (std::size_t i = 0; i < n; ++i) {
    classes.push_back(o.add_class(ontoekg::Label("Class " + std::to_string(i)),
                                  "Description of class " + std::to_string(i) + "."));
  }
  for (std::size_t i = 1; i < n; ++i) o.hierarchy.push_back({classes[i], classes[i / 2]});
  for (std::size_t i = 0; i + 1 < n; i += 2) {
    o.add_property(ontoekg::Label("relates " + std::to_string(i)), "", classes[i], classes[i + 1]);
  }
  return o;
}

void BM_EmitTurtle(benchmark::State& state) {
  const auto o = sample(static_cast<std::size_t>(state.range(0)));
  const auto triples = ontoekg::to_triples(o);
  for (auto _ : state) benchmark::DoNotOptimize(ontoekg::emit_turtle(triples, o.base_iri));
}
BENCHMARK(BM_EmitTurtle)->Range(16, 1024);

void BM_ParseTurtle(benchmark::State& state) {
  const auto o = sample(static_cast<std::size_t>(state.range(0)));
  const auto text = ontoekg::emit_turtle(ontoekg::to_triples(o), o.base_iri);
  for (auto _ : state) benchmark::DoNotOptimize(ontoekg::parse_turtle(text));
  state.SetBytesProcessed(static_cast<int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_ParseTurtle)->Range(16, 1024);

}  // namespace

BENCHMARK_MAIN();

#include "ontoekg/validate.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace ontoekg {

std::string_view to_string(ViolationCode code) noexcept {
  switch (code) {
    case ViolationCode::Cycle: return "CYCLE";
    case ViolationCode::DanglingRef: return "DANGLING_REF";
    case ViolationCode::RedundantEdge: return "REDUNDANT_EDGE";
    case ViolationCode::AmbiguousProperty: return "AMBIGUOUS_PROPERTY";
    case ViolationCode::SuspectedIndividual: return "SUSPECTED_INDIVIDUAL";
  }
  return "UNKNOWN";
}

bool is_ambiguous_property_label(std::string_view label) {
  static constexpr std::array<std::string_view, 4> kDenyList = {
      "istypeof", "subclassof", "instanceof", "isa"};
  const std::string key = label_key(label);
  return std::find(kDenyList.begin(), kDenyList.end(), key) != kDenyList.end();
}

bool looks_like_individual(const OntologyClass& c) {
  std::istringstream in(c.label.text());
  std::string word;
  int count = 0;
  while (in >> word) {
    if (!std::isupper(static_cast<unsigned char>(word[0]))) return false;
    ++count;
  }
  if (count < 2) return false;

  std::string desc;
  for (char ch : c.description) {
    desc.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  }
  static constexpr std::array<std::string_view, 6> kKindOpeners = {
      "a ", "an ", "any ", "each ", "every ", "all "};
  static constexpr std::array<std::string_view, 6> kKindPhrases = {
      "type of", "kind of", "class of", "category of", "instances", "entities"};
  for (auto opener : kKindOpeners) {
    if (desc.starts_with(opener)) return false;
  }
  // "The employee accountable for ..." defines a role; "The Acme Group ..."
  // names one organisation.
  if (desc.starts_with("the ") && c.description.size() > 4 &&
      std::islower(static_cast<unsigned char>(c.description[4]))) {
    return false;
  }
  for (auto phrase : kKindPhrases) {
    if (desc.find(phrase) != std::string::npos) return false;
  }
  return true;
}

namespace {

struct Graph {
  std::vector<Iri> nodes;
  std::map<Iri, std::size_t> index;
  std::vector<std::vector<std::size_t>> succ;
};

// Tarjan's strongly connected components; returns component id per node.
std::vector<std::size_t> strongly_connected(const Graph& g, std::size_t& count) {
  const std::size_t n = g.nodes.size();
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> order(n, kUnset), low(n, 0), comp(n, kUnset);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::size_t counter = 0;
  count = 0;

  std::function<void(std::size_t)> visit = [&](std::size_t v) {
    order[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (std::size_t w : g.succ[v]) {
      if (order[w] == kUnset) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], order[w]);
      }
    }
    if (low[v] == order[v]) {
      std::size_t w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp[w] = count;
      } while (w != v);
      ++count;
    }
  };
  for (std::size_t v = 0; v < n; ++v) {
    if (order[v] == kUnset) visit(v);
  }
  return comp;
}

bool reachable(const Graph& g, std::size_t from, std::size_t to) {
  std::vector<bool> seen(g.nodes.size(), false);
  std::vector<std::size_t> todo{from};
  seen[from] = true;
  while (!todo.empty()) {
    std::size_t v = todo.back();
    todo.pop_back();
    if (v == to) return true;
    for (std::size_t w : g.succ[v]) {
      if (!seen[w]) {
        seen[w] = true;
        todo.push_back(w);
      }
    }
  }
  return false;
}

std::string names(const std::vector<Iri>& iris) {
  std::string out;
  for (const auto& iri : iris) {
    if (!out.empty()) out += ", ";
    out += local_name(iri);
  }
  return out;
}

}  // namespace

std::vector<Violation> validate_ontology(const Ontology& o) {
  std::vector<Violation> out;

  Graph g;
  for (const auto& c : o.classes) {
    if (g.index.emplace(c.iri, g.nodes.size()).second) g.nodes.push_back(c.iri);
  }
  g.succ.resize(g.nodes.size());

  auto dangling = [&](const Iri& iri, const std::string& where) {
    out.push_back({ViolationCode::DanglingRef, {iri},
                   where + " refers to undeclared class " + iri.value()});
  };

  for (const auto& p : o.properties) {
    if (!o.has_class(p.domain)) dangling(p.domain, "domain of " + p.iri.value());
    if (!o.has_class(p.range)) dangling(p.range, "range of " + p.iri.value());
  }

  std::set<SubclassEdge> seen_edges;
  std::vector<SubclassEdge> edges;
  for (const auto& e : o.hierarchy) {
    bool ok = true;
    if (!g.index.contains(e.sub)) { dangling(e.sub, "subclass edge"); ok = false; }
    if (!g.index.contains(e.sup)) { dangling(e.sup, "subclass edge"); ok = false; }
    if (!ok) continue;
    if (!seen_edges.insert(e).second) {
      out.push_back({ViolationCode::RedundantEdge, {e.sub, e.sup},
                     "duplicate subclass edge " + names({e.sub, e.sup})});
      continue;
    }
    edges.push_back(e);
    g.succ[g.index.at(e.sub)].push_back(g.index.at(e.sup));
  }

  std::size_t comp_count = 0;
  const auto comp = strongly_connected(g, comp_count);
  std::vector<std::vector<Iri>> members(comp_count);
  for (std::size_t v = 0; v < g.nodes.size(); ++v) members[comp[v]].push_back(g.nodes[v]);
  std::set<std::size_t> self_loops;
  for (const auto& e : edges) {
    if (e.sub == e.sup) self_loops.insert(comp[g.index.at(e.sub)]);
  }
  std::vector<std::vector<Iri>> cycles;
  for (std::size_t c = 0; c < comp_count; ++c) {
    if (members[c].size() > 1 || self_loops.contains(c)) {
      auto iris = members[c];
      std::sort(iris.begin(), iris.end());
      cycles.push_back(std::move(iris));
    }
  }
  std::sort(cycles.begin(), cycles.end());
  for (auto& iris : cycles) {
    std::string msg = "subclass cycle among " + names(iris);
    out.push_back({ViolationCode::Cycle, std::move(iris), std::move(msg)});
  }

  for (const auto& e : edges) {
    if (e.sub == e.sup) continue;
    const std::size_t a = g.index.at(e.sub);
    const std::size_t b = g.index.at(e.sup);
    for (std::size_t c : g.succ[a]) {
      if (c != b && reachable(g, c, b)) {
        out.push_back({ViolationCode::RedundantEdge, {e.sub, e.sup},
                       "edge " + names({e.sub, e.sup}) + " is implied transitively"});
        break;
      }
    }
  }

  for (const auto& p : o.properties) {
    if (is_ambiguous_property_label(p.label.text())) {
      out.push_back({ViolationCode::AmbiguousProperty, {p.iri},
                     "property '" + p.label.text() +
                         "' shadows RDF typing or subsumption semantics"});
    }
  }

  for (const auto& c : o.classes) {
    if (!c.is_reified_datatype && looks_like_individual(c)) {
      out.push_back({ViolationCode::SuspectedIndividual, {c.iri},
                     "class '" + c.label.text() + "' reads like a named individual"});
    }
  }

  return out;
}

bool has_fatal(const std::vector<Violation>& violations) {
  return std::any_of(violations.begin(), violations.end(),
                     [](const Violation& v) { return v.is_fatal(); });
}

}  // namespace ontoekg

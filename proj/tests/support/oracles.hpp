// Independent reference implementations and generators shared by the unit
// tests and the acceptance suite. Deliberately naive: exhaustive search and
// plain DFS, never the library's own algorithms.
#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ontoekg/evaluation.hpp"
#include "ontoekg/model.hpp"

namespace oracle {

using ontoekg::Iri;
using ontoekg::SubclassEdge;

using Edge = std::pair<std::string, std::string>;

inline std::vector<Edge> as_pairs(const std::vector<SubclassEdge>& edges) {
  std::vector<Edge> out;
  for (const auto& e : edges) out.emplace_back(e.sub.value(), e.sup.value());
  return out;
}

// Three-colour DFS.
inline bool acyclic(const std::vector<Edge>& edges) {
  std::map<std::string, std::vector<std::string>> succ;
  for (const auto& [a, b] : edges) {
    succ[a].push_back(b);
    succ[b];
  }
  std::map<std::string, int> colour;
  std::function<bool(const std::string&)> visit = [&](const std::string& v) {
    colour[v] = 1;
    for (const auto& w : succ[v]) {
      if (colour[w] == 1) return false;
      if (colour[w] == 0 && !visit(w)) return false;
    }
    colour[v] = 2;
    return true;
  };
  for (const auto& [v, _] : succ) {
    if (colour[v] == 0 && !visit(v)) return false;
  }
  return true;
}

// All pairs (a, b) with a path a -> ... -> b of length >= 1.
inline std::set<Edge> reachability(const std::vector<Edge>& edges) {
  std::set<Edge> reach(edges.begin(), edges.end());
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& [a, b] : std::set<Edge>(reach)) {
      for (const auto& [c, d] : edges) {
        if (c == b && reach.emplace(a, d).second) grew = true;
      }
    }
  }
  return reach;
}

// True when some edge (a, b) is also reachable through a path of length >= 2.
inline bool has_implied_edge(const std::vector<Edge>& edges) {
  const auto reach = reachability(edges);
  for (const auto& [a, b] : edges) {
    for (const auto& [c, d] : edges) {
      if (c == a && d != b && reach.contains({d, b})) return true;
    }
  }
  return false;
}

// Maximum bipartite matching size by trying every assignment.
inline std::size_t brute_force_matching(const std::vector<std::vector<bool>>& compat) {
  const std::size_t n = compat.size();
  const std::size_t m = n ? compat[0].size() : 0;
  std::vector<bool> used(m, false);
  std::function<std::size_t(std::size_t)> best = [&](std::size_t i) -> std::size_t {
    if (i == n) return 0;
    std::size_t result = best(i + 1);  // leave i unmatched
    for (std::size_t j = 0; j < m; ++j) {
      if (compat[i][j] && !used[j]) {
        used[j] = true;
        result = std::max(result, 1 + best(i + 1));
        used[j] = false;
      }
    }
    return result;
  };
  return best(0);
}

// Counts pred triples that also occur in gold, one by one.
inline std::size_t count_common(const std::vector<ontoekg::EvalTriple>& pred,
                                const std::vector<ontoekg::EvalTriple>& gold) {
  std::size_t n = 0;
  for (const auto& p : pred) {
    for (const auto& g : gold) {
      if (p.subject == g.subject && p.predicate == g.predicate && p.object == g.object) {
        ++n;
        break;
      }
    }
  }
  return n;
}

inline const std::vector<std::string>& vocabulary() {
  static const std::vector<std::string> words = {
      "data",   "asset",  "policy", "employee", "role",     "vehicle", "driver",
      "route",  "budget", "invoice", "supplier", "contract", "report", "incident",
      "system", "record", "team",   "standard", "control",  "parcel"};
  return words;
}

inline std::string random_label(std::mt19937& rng) {
  const auto& words = vocabulary();
  std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1);
  std::uniform_int_distribution<int> len(1, 3);
  std::string out;
  for (int i = len(rng); i > 0; --i) {
    if (!out.empty()) out += ' ';
    out += words[pick(rng)];
  }
  return out;
}

inline std::string random_description(std::mt19937& rng) {
  static const std::vector<std::string> pieces = {
      "",          "A plain description.", "Says \"quoted\" things.", "Back\\slash",
      "Two\nlines", "Unicode: caf\xc3\xa9 \xe2\x82\xac", "Tab\there", "Ends with a quote\""};
  std::uniform_int_distribution<std::size_t> pick(0, pieces.size() - 1);
  return pieces[pick(rng)];
}

// Valid ontology: acyclic hierarchy, resolved references. Labels repeat on
// purpose so that IRI collision suffixes are exercised.
inline ontoekg::Ontology random_ontology(std::mt19937& rng, std::size_t n_classes) {
  ontoekg::Ontology o{Iri(ontoekg::kDefaultBaseIri)};
  std::vector<Iri> classes;
  for (std::size_t i = 0; i < n_classes; ++i) {
    classes.push_back(o.add_class(ontoekg::Label(random_label(rng)), random_description(rng)));
  }
  if (classes.empty()) return o;
  std::uniform_int_distribution<std::size_t> pick(0, classes.size() - 1);
  std::bernoulli_distribution coin(0.3);
  for (std::size_t i = 0; i < classes.size(); ++i) {
    for (std::size_t j = i + 1; j < classes.size(); ++j) {
      if (coin(rng) && coin(rng)) o.hierarchy.push_back({classes[i], classes[j]});
    }
  }
  std::uniform_int_distribution<std::size_t> n_props(0, n_classes);
  for (std::size_t k = n_props(rng); k > 0; --k) {
    o.add_property(ontoekg::Label("has " + random_label(rng)), random_description(rng),
                   classes[pick(rng)], classes[pick(rng)]);
  }
  return o;
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace oracle

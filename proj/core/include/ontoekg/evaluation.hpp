#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ontoekg/llm/backend.hpp"
#include "ontoekg/model.hpp"

namespace ontoekg {

/// A triple in label space, e.g. ("Apple", "subClassOf", "Fruit").
struct EvalTriple {
  std::string subject;
  std::string predicate;
  std::string object;

  friend auto operator<=>(const EvalTriple&, const EvalTriple&) = default;
};

/// Sorted, duplicate-free structural triples of `o` in label space:
///   class         (C, "type", "Class")
///   edge          (Sub, "subClassOf", Sup)
///   property      (p, "type", "ObjectProperty"), (p, "domain", D), (p, "range", R)
/// With include_annotations, also (x, "label", label) and (x, "comment", text).
std::vector<EvalTriple> to_eval_triples(const Ontology& o, bool include_annotations = false);

enum class MatchMode { Exact, Fuzzy };

std::string_view to_string(MatchMode mode) noexcept;

struct MatchedPair {
  EvalTriple pred;
  EvalTriple gold;
  double score = 1.0;  // smallest per-position similarity

  friend bool operator==(const MatchedPair&, const MatchedPair&) = default;
};

struct MatchReport {
  MatchMode mode = MatchMode::Exact;
  std::optional<double> threshold;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::vector<MatchedPair> matched;  // ordered by predicted triple
  std::vector<EvalTriple> unmatched_pred;
  std::vector<EvalTriple> unmatched_gold;

  friend bool operator==(const MatchReport&, const MatchReport&) = default;
};

/// Case-sensitive equality on all three positions. Inputs are treated as
/// sets. Both empty scores 1/1/1; exactly one empty scores 0/0/0.
MatchReport exact_match_score(std::vector<EvalTriple> pred, std::vector<EvalTriple> gold);

/// A predicted and a gold triple are compatible when the cosine similarity
/// of their labels reaches `threshold` at every position. The matched set
/// is a maximum matching of the compatibility graph, lexicographically
/// smallest among maxima. Each distinct label is embedded once.
MatchReport fuzzy_match_score(std::vector<EvalTriple> pred, std::vector<EvalTriple> gold,
                              llm::EmbeddingBackend& embedder, double threshold);

/// {"use_case","mode","threshold","precision","recall","f1","matches",
///  "unmatched_pred","unmatched_gold"}
nlohmann::ordered_json report_to_json(const std::string& use_case, const MatchReport& report);

struct RenderedReport {
  std::string text;
  nlohmann::ordered_json json;  // array of report_to_json objects
};

/// Table with columns Use case / Precision / Recall / F1 at 3 decimals,
/// one row per use case in key order.
RenderedReport render_report(const std::map<std::string, MatchReport>& reports);

}  // namespace ontoekg

#include "ontoekg/evaluation.hpp"

#include <algorithm>
#include <cstdio>
#include <set>

#include "ontoekg/matching.hpp"

namespace ontoekg {

std::vector<EvalTriple> to_eval_triples(const Ontology& o, bool include_annotations) {
  std::set<EvalTriple> out;
  auto class_label = [&](const Iri& iri) {
    const OntologyClass* c = o.find_class(iri);
    return c ? c->label.text() : std::string(local_name(iri));
  };

  for (const auto& c : o.classes) {
    const std::string& name = c.label.text();
    out.insert({name, "type", "Class"});
    if (include_annotations) {
      out.insert({name, "label", name});
      if (!c.description.empty()) out.insert({name, "comment", c.description});
    }
  }
  for (const auto& e : o.hierarchy) {
    out.insert({class_label(e.sub), "subClassOf", class_label(e.sup)});
  }
  for (const auto& p : o.properties) {
    const std::string& name = p.label.text();
    out.insert({name, "type", "ObjectProperty"});
    out.insert({name, "domain", class_label(p.domain)});
    out.insert({name, "range", class_label(p.range)});
    if (include_annotations) {
      out.insert({name, "label", name});
      if (!p.description.empty()) out.insert({name, "comment", p.description});
    }
  }
  return {out.begin(), out.end()};
}

std::string_view to_string(MatchMode mode) noexcept {
  return mode == MatchMode::Exact ? "exact" : "fuzzy";
}

namespace {

void as_set(std::vector<EvalTriple>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

void fill_metrics(MatchReport& r, std::size_t n_pred, std::size_t n_gold) {
  if (n_pred == 0 && n_gold == 0) {
    r.precision = r.recall = r.f1 = 1.0;
    return;
  }
  const double m = static_cast<double>(r.matched.size());
  r.precision = n_pred ? m / static_cast<double>(n_pred) : 0.0;
  r.recall = n_gold ? m / static_cast<double>(n_gold) : 0.0;
  const double sum = r.precision + r.recall;
  r.f1 = sum > 0 ? 2 * r.precision * r.recall / sum : 0.0;
}

// pairs are (pred index, gold index) sorted by pred index.
MatchReport assemble(MatchMode mode, std::optional<double> threshold,
                     const std::vector<EvalTriple>& pred, const std::vector<EvalTriple>& gold,
                     const std::vector<std::pair<std::size_t, std::size_t>>& pairs,
                     const std::vector<double>& scores) {
  MatchReport r;
  r.mode = mode;
  r.threshold = threshold;
  std::vector<bool> pred_used(pred.size()), gold_used(gold.size());
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto [i, j] = pairs[k];
    pred_used[i] = gold_used[j] = true;
    r.matched.push_back({pred[i], gold[j], scores[k]});
  }
  for (std::size_t i = 0; i < pred.size(); ++i) {
    if (!pred_used[i]) r.unmatched_pred.push_back(pred[i]);
  }
  for (std::size_t j = 0; j < gold.size(); ++j) {
    if (!gold_used[j]) r.unmatched_gold.push_back(gold[j]);
  }
  fill_metrics(r, pred.size(), gold.size());
  return r;
}

}  // namespace

MatchReport exact_match_score(std::vector<EvalTriple> pred, std::vector<EvalTriple> gold) {
  as_set(pred);
  as_set(gold);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0, j = 0; i < pred.size() && j < gold.size();) {
    if (pred[i] < gold[j]) {
      ++i;
    } else if (gold[j] < pred[i]) {
      ++j;
    } else {
      pairs.emplace_back(i++, j++);
    }
  }
  return assemble(MatchMode::Exact, std::nullopt, pred, gold, pairs,
                  std::vector<double>(pairs.size(), 1.0));
}

MatchReport fuzzy_match_score(std::vector<EvalTriple> pred, std::vector<EvalTriple> gold,
                              llm::EmbeddingBackend& embedder, double threshold) {
  if (!(threshold > 0.0 && threshold <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument,
                "fuzzy threshold must lie in (0, 1], got " + std::to_string(threshold));
  }
  as_set(pred);
  as_set(gold);

  std::map<std::string, std::size_t> index;
  auto intern = [&](const std::string& s) { index.emplace(s, 0); };
  for (const auto* side : {&pred, &gold}) {
    for (const auto& t : *side) {
      intern(t.subject);
      intern(t.predicate);
      intern(t.object);
    }
  }
  std::vector<std::string> labels;
  for (auto& [label, i] : index) {
    i = labels.size();
    labels.push_back(label);
  }
  const std::vector<llm::Vector> vectors =
      labels.empty() ? std::vector<llm::Vector>{} : embedder.embed(labels);

  auto similarity = [&](const std::string& a, const std::string& b) {
    if (a == b) return 1.0;
    return llm::dot(vectors[index.at(a)], vectors[index.at(b)]);
  };
  auto triple_score = [&](const EvalTriple& p, const EvalTriple& g) {
    return std::min({similarity(p.subject, g.subject), similarity(p.predicate, g.predicate),
                     similarity(p.object, g.object)});
  };

  BipartiteAdjacency adj(pred.size());
  for (std::size_t i = 0; i < pred.size(); ++i) {
    for (std::size_t j = 0; j < gold.size(); ++j) {
      if (triple_score(pred[i], gold[j]) >= threshold) adj[i].push_back(j);
    }
  }
  const auto pairs = lexicographic_max_matching(adj, gold.size());
  std::vector<double> scores;
  for (const auto& [i, j] : pairs) scores.push_back(triple_score(pred[i], gold[j]));
  return assemble(MatchMode::Fuzzy, threshold, pred, gold, pairs, scores);
}

namespace {

nlohmann::ordered_json triple_json(const EvalTriple& t) {
  return nlohmann::ordered_json::array({t.subject, t.predicate, t.object});
}

std::string fixed3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

}  // namespace

nlohmann::ordered_json report_to_json(const std::string& use_case, const MatchReport& report) {
  nlohmann::ordered_json j;
  j["use_case"] = use_case;
  j["mode"] = std::string(to_string(report.mode));
  j["threshold"] = report.threshold ? nlohmann::ordered_json(*report.threshold) : nlohmann::ordered_json(nullptr);
  j["precision"] = report.precision;
  j["recall"] = report.recall;
  j["f1"] = report.f1;
  auto& matches = j["matches"] = nlohmann::ordered_json::array();
  for (const auto& m : report.matched) {
    matches.push_back(
        {{"pred", triple_json(m.pred)}, {"gold", triple_json(m.gold)}, {"score", m.score}});
  }
  auto& up = j["unmatched_pred"] = nlohmann::ordered_json::array();
  for (const auto& t : report.unmatched_pred) up.push_back(triple_json(t));
  auto& ug = j["unmatched_gold"] = nlohmann::ordered_json::array();
  for (const auto& t : report.unmatched_gold) ug.push_back(triple_json(t));
  return j;
}

RenderedReport render_report(const std::map<std::string, MatchReport>& reports) {
  const std::vector<std::string> header{"Use case", "Precision", "Recall", "F1"};
  std::vector<std::vector<std::string>> rows;
  RenderedReport out;
  out.json = nlohmann::ordered_json::array();
  for (const auto& [use_case, r] : reports) {
    rows.push_back({use_case, fixed3(r.precision), fixed3(r.recall), fixed3(r.f1)});
    out.json.push_back(report_to_json(use_case, r));
  }

  // Numeric columns are at least as wide as "0.000" even with no rows.
  std::vector<std::size_t> width;
  for (std::size_t c = 0; c < header.size(); ++c) {
    width.push_back(c == 0 ? header[c].size() : std::max(header[c].size(), fixed3(0).size()));
  }
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  auto line = [&](const std::vector<std::string>& cells) {
    std::string s = "|";
    for (std::size_t c = 0; c < cells.size(); ++c) {
      std::string cell = cells[c];
      const std::string pad(width[c] - cell.size(), ' ');
      // Names left-aligned, numbers right-aligned.
      s += " " + (c == 0 ? cell + pad : pad + cell) + " |";
    }
    return s + "\n";
  };
  out.text = line(header);
  std::string rule = "|";
  for (std::size_t c = 0; c < width.size(); ++c) {
    rule += (c == 0 ? ":" : "") + std::string(width[c] + 1, '-') + (c == 0 ? "" : ":") + "|";
  }
  out.text += rule + "\n";
  for (const auto& row : rows) out.text += line(row);
  return out;
}

}  // namespace ontoekg

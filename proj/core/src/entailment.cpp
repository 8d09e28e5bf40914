#include "ontoekg/entailment.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>

#include "parallel.hpp"
#include "ontoekg/structured.hpp"

namespace ontoekg {

using llm::Json;

SubsumptionQuery::SubsumptionQuery(Label sub, std::string sub_desc, Label sup,
                                   std::string sup_desc)
    : sub_label(std::move(sub)),
      sub_description(std::move(sub_desc)),
      sup_label(std::move(sup)),
      sup_description(std::move(sup_desc)) {
  if (label_key(sub_label.text()) == label_key(sup_label.text())) {
    throw Error(ErrorCode::InvalidArgument,
                "a subsumption query needs two distinct classes, got '" + sub_label.text() + "' twice");
  }
}

CandidatePairs generate_candidate_pairs(const std::vector<OntologyClass>& classes,
                                        std::size_t cap) {
  std::vector<const OntologyClass*> eligible;
  for (const auto& c : classes) {
    if (!c.is_reified_datatype) eligible.push_back(&c);
  }
  std::sort(eligible.begin(), eligible.end(), [](const OntologyClass* a, const OntologyClass* b) {
    return a->label.text() < b->label.text();
  });

  CandidatePairs out;
  for (const auto* sub : eligible) {
    for (const auto* sup : eligible) {
      if (sub == sup || label_key(sub->label.text()) == label_key(sup->label.text())) continue;
      ++out.total;
      if (out.queries.size() < cap) {
        out.queries.emplace_back(sub->label, sub->description, sup->label, sup->description);
      }
    }
  }
  out.truncated = out.total > out.queries.size();
  return out;
}

const Json& verdict_response_schema() {
  static const Json schema = Json::parse(R"({
    "type": "object",
    "additionalProperties": false,
    "required": ["holds", "rationale"],
    "properties": {
      "holds": {"type": "boolean"},
      "rationale": {"type": "string"}
    }
  })");
  return schema;
}

namespace {

std::string describe(const std::string& description) {
  return description.empty() ? "(no description)" : description;
}

}  // namespace

JudgeOutcome judge_subsumption(const SubsumptionQuery& query, llm::ChatBackend& backend,
                               const std::string& model, const PromptAsset& prompt) {
  const std::string& sub = query.sub_label.text();
  const std::string& sup = query.sup_label.text();
  llm::ChatRequest request;
  request.model = model;
  request.system_prompt = prompt.text;
  request.user_content = "Candidate subclass: " + sub + "\nDescription: " +
                         describe(query.sub_description) + "\n\nCandidate superclass: " + sup +
                         "\nDescription: " + describe(query.sup_description) + "\n\nIs " + sub +
                         " a subclass of " + sup + "?";
  request.response_schema = verdict_response_schema();
  request.context = {{"stage", "entailment"}, {"sub", sub}, {"sup", sup}};

  auto accept = [](const Json& v) {
    if (v.at("holds").get<bool>() && v.at("rationale").get<std::string>().empty()) {
      throw Error(ErrorCode::SchemaFailure, "a positive verdict needs a non-empty rationale");
    }
  };

  StructuredResult reply;
  try {
    reply = complete_structured(backend, request, accept);
  } catch (const Error& e) {
    throw Error(e.code(), "subsumption " + sub + " <= " + sup + ": " + e.what());
  }
  return JudgeOutcome{
      SubsumptionVerdict{query, reply.value.at("holds").get<bool>(),
                         reply.value.at("rationale").get<std::string>()},
      reply.retries};
}

EntailmentRun entail(const std::vector<OntologyClass>& classes, llm::ChatBackend& backend,
                     const PipelineConfig& cfg, const PromptAsset& prompt) {
  auto pairs = generate_candidate_pairs(classes, cfg.max_entailment_pairs);
  auto outcomes = detail::parallel_map<std::optional<JudgeOutcome>>(
      pairs.queries.size(), cfg.in_flight_cap, [&](std::size_t i) {
        return std::optional<JudgeOutcome>(
            judge_subsumption(pairs.queries[i], backend, cfg.entailment_model, prompt));
      });

  EntailmentRun run;
  run.total_pairs = pairs.total;
  run.truncated = pairs.truncated;
  for (auto& o : outcomes) {
    run.retries += o->retries;
    run.verdicts.push_back(std::move(o->verdict));
  }
  return run;
}

std::string_view to_string(ConflictKind kind) noexcept {
  return kind == ConflictKind::Mutual ? "MUTUAL" : "CYCLE_REJECTED";
}

namespace {

bool reaches(const std::vector<std::vector<std::size_t>>& succ, std::size_t from, std::size_t to) {
  std::vector<bool> seen(succ.size(), false);
  std::vector<std::size_t> todo{from};
  seen[from] = true;
  while (!todo.empty()) {
    const std::size_t v = todo.back();
    todo.pop_back();
    if (v == to) return true;
    for (std::size_t w : succ[v]) {
      if (!seen[w]) {
        seen[w] = true;
        todo.push_back(w);
      }
    }
  }
  return false;
}

}  // namespace

Hierarchy build_hierarchy(std::span<const SubsumptionVerdict> verdicts,
                          const std::vector<OntologyClass>& classes) {
  // Node per eligible class, keyed by label key.
  std::map<std::string, std::size_t> node_of;
  std::vector<const OntologyClass*> nodes;
  for (const auto& c : classes) {
    if (c.is_reified_datatype) continue;
    if (node_of.emplace(label_key(c.label.text()), nodes.size()).second) nodes.push_back(&c);
  }
  auto label_of = [&](std::size_t v) -> const std::string& { return nodes[v]->label.text(); };

  std::set<std::pair<std::size_t, std::size_t>> positive;
  for (const auto& v : verdicts) {
    if (!v.holds) continue;
    auto a = node_of.find(label_key(v.query.sub_label.text()));
    auto b = node_of.find(label_key(v.query.sup_label.text()));
    if (a == node_of.end() || b == node_of.end() || a->second == b->second) continue;
    positive.emplace(a->second, b->second);
  }

  Hierarchy out;
  auto by_label = [&](const std::pair<std::size_t, std::size_t>& x,
                      const std::pair<std::size_t, std::size_t>& y) {
    return std::tie(label_of(x.first), label_of(x.second)) <
           std::tie(label_of(y.first), label_of(y.second));
  };

  std::vector<std::pair<std::size_t, std::size_t>> mutual, candidates;
  for (const auto& e : positive) {
    if (positive.contains({e.second, e.first})) {
      if (by_label(e, {e.second, e.first})) mutual.push_back(e);
    } else {
      candidates.push_back(e);
    }
  }
  std::sort(mutual.begin(), mutual.end(), by_label);
  for (const auto& [a, b] : mutual) {
    out.conflicts.push_back({ConflictKind::Mutual,
                             {label_of(a), label_of(b)},
                             {{label_of(a), label_of(b)}, {label_of(b), label_of(a)}}});
  }

  std::sort(candidates.begin(), candidates.end(), by_label);
  std::vector<std::vector<std::size_t>> succ(nodes.size());
  std::vector<std::pair<std::size_t, std::size_t>> accepted;
  for (const auto& [a, b] : candidates) {
    if (reaches(succ, b, a)) {
      out.conflicts.push_back(
          {ConflictKind::CycleRejected, {label_of(a), label_of(b)}, {{label_of(a), label_of(b)}}});
      continue;
    }
    succ[a].push_back(b);
    accepted.emplace_back(a, b);
  }

  for (const auto& [a, b] : accepted) {
    const bool implied = std::any_of(succ[a].begin(), succ[a].end(), [&](std::size_t c) {
      return c != b && reaches(succ, c, b);
    });
    if (!implied) out.edges.push_back({nodes[a]->iri, nodes[b]->iri});
  }
  return out;
}

nlohmann::ordered_json conflict_log_entry(const Conflict& conflict) {
  nlohmann::ordered_json dropped = nlohmann::ordered_json::array();
  for (const auto& [sub, sup] : conflict.dropped) dropped.push_back({sub, sup});
  return nlohmann::ordered_json{{"kind", std::string(to_string(conflict.kind))},
                                {"labels", conflict.labels},
                                {"dropped", dropped}};
}

Json verdicts_to_json(const std::vector<SubsumptionVerdict>& verdicts) {
  Json out = Json::array();
  for (const auto& v : verdicts) {
    out.push_back({{"sub", v.query.sub_label.text()},
                   {"sub_description", v.query.sub_description},
                   {"sup", v.query.sup_label.text()},
                   {"sup_description", v.query.sup_description},
                   {"holds", v.holds},
                   {"rationale", v.rationale}});
  }
  return out;
}

std::vector<SubsumptionVerdict> verdicts_from_json(const Json& j) {
  std::vector<SubsumptionVerdict> out;
  try {
    for (const auto& v : j) {
      out.push_back(SubsumptionVerdict{
          SubsumptionQuery(Label(v.at("sub").get<std::string>()), v.value("sub_description", ""),
                           Label(v.at("sup").get<std::string>()), v.value("sup_description", "")),
          v.at("holds").get<bool>(), v.value("rationale", "")});
    }
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("malformed verdict list: ") + e.what());
  }
  return out;
}

}  // namespace ontoekg

#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ontoekg/config.hpp"
#include "ontoekg/llm/backend.hpp"
#include "ontoekg/model.hpp"
#include "ontoekg/prompts.hpp"

namespace ontoekg {

/// "Is sub a subclass of sup?" for two distinct classes.
struct SubsumptionQuery {
  Label sub_label;
  std::string sub_description;
  Label sup_label;
  std::string sup_description;

  SubsumptionQuery(Label sub, std::string sub_desc, Label sup, std::string sup_desc);

  friend bool operator==(const SubsumptionQuery&, const SubsumptionQuery&) = default;
};

struct SubsumptionVerdict {
  SubsumptionQuery query;
  bool holds = false;
  std::string rationale;

  friend bool operator==(const SubsumptionVerdict&, const SubsumptionVerdict&) = default;
};

struct CandidatePairs {
  std::vector<SubsumptionQuery> queries;
  std::size_t total = 0;  // pairs before truncation
  bool truncated = false;
};

/// All ordered pairs of distinct non-datatype classes sorted by
/// (sub label, sup label), cut at `cap`.
CandidatePairs generate_candidate_pairs(const std::vector<OntologyClass>& classes,
                                        std::size_t cap);

/// Strict verdict schema: {"holds":bool,"rationale":str}
const llm::Json& verdict_response_schema();

struct JudgeOutcome {
  SubsumptionVerdict verdict;
  int retries = 0;
};

/// One schema-constrained judgment with the same repair-retry contract as
/// extraction. A positive verdict with an empty rationale is rejected.
JudgeOutcome judge_subsumption(const SubsumptionQuery& query, llm::ChatBackend& backend,
                               const std::string& model,
                               const PromptAsset& prompt = default_entailment_prompt());

struct EntailmentRun {
  std::vector<SubsumptionVerdict> verdicts;
  int retries = 0;
  std::size_t total_pairs = 0;
  bool truncated = false;
};

/// Judges every candidate pair, up to cfg.in_flight_cap at a time.
/// Verdicts come back in candidate order.
EntailmentRun entail(const std::vector<OntologyClass>& classes, llm::ChatBackend& backend,
                     const PipelineConfig& cfg,
                     const PromptAsset& prompt = default_entailment_prompt());

enum class ConflictKind { Mutual, CycleRejected };

std::string_view to_string(ConflictKind kind) noexcept;

using LabelPair = std::pair<std::string, std::string>;

struct Conflict {
  ConflictKind kind;
  std::vector<std::string> labels;
  std::vector<LabelPair> dropped;  // (sub, sup) edges removed

  friend bool operator==(const Conflict&, const Conflict&) = default;
};

struct Hierarchy {
  std::vector<SubclassEdge> edges;
  std::vector<Conflict> conflicts;
};

/// Turns positive verdicts into a transitively reduced DAG over `classes`.
///  1. A pair judged to hold in both directions is a MUTUAL conflict and
///     contributes no edge.
///  2. Remaining positive edges are inserted sorted by (sub, sup) label; an
///     edge that would close a cycle is rejected as CYCLE_REJECTED.
///  3. Edges implied by longer paths are removed.
/// Verdicts naming unknown or datatype classes are ignored. The result does
/// not depend on the order of `verdicts`.
Hierarchy build_hierarchy(std::span<const SubsumptionVerdict> verdicts,
                          const std::vector<OntologyClass>& classes);

/// {"kind":..., "labels":[...], "dropped":[[sub,sup],...]}
nlohmann::ordered_json conflict_log_entry(const Conflict& conflict);

llm::Json verdicts_to_json(const std::vector<SubsumptionVerdict>& verdicts);
std::vector<SubsumptionVerdict> verdicts_from_json(const llm::Json& j);

}  // namespace ontoekg

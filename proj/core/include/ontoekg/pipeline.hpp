#pragma once

#include <string>
#include <vector>

#include "ontoekg/config.hpp"
#include "ontoekg/entailment.hpp"
#include "ontoekg/extraction.hpp"
#include "ontoekg/ingestion.hpp"
#include "ontoekg/llm/backend.hpp"
#include "ontoekg/model.hpp"
#include "ontoekg/prompts.hpp"
#include "ontoekg/validate.hpp"

namespace ontoekg {

struct DocumentExtraction {
  std::string document;
  ExtractionResult result;
  int retries = 0;
  std::size_t segments = 0;
};

/// Output of the extraction stage, one entry per document in corpus order.
struct ExtractionStage {
  std::vector<DocumentExtraction> documents;
};

/// Extracts every document, up to cfg.in_flight_cap documents at a time.
ExtractionStage run_extraction(const std::vector<Document>& documents,
                               llm::ChatBackend& backend, const PipelineConfig& cfg,
                               const PromptAsset& prompt = default_extraction_prompt());

/// {"documents":[{"id","retries","segments","classes":[...],"properties":[...]}]}
llm::Json to_json(const ExtractionStage& stage);
ExtractionStage extraction_stage_from_json(const llm::Json& j);

struct DocumentRepair {
  std::string document;
  Repair repair;
};

struct Assembly {
  Ontology ontology;
  std::vector<DocumentRepair> repairs;
};

/// Reifies datatypes, merges duplicates and resolves references per
/// document, then merges across documents and mints IRIs. The result has
/// no hierarchy yet.
Assembly assemble_ontology(const ExtractionStage& stage, const PipelineConfig& cfg);

struct BuildResult {
  Ontology ontology;
  std::vector<DocumentRepair> repairs;
  EntailmentRun entailment;
  std::vector<Conflict> conflicts;
  std::vector<Violation> violations;
  std::string turtle;
};

/// Everything after extraction: assembly, entailment, hierarchy, validation
/// and Turtle emission. Never throws on validation findings; see
/// fails_strict.
BuildResult run_after_extraction(const ExtractionStage& stage, llm::ChatBackend& backend,
                                 const PipelineConfig& cfg,
                                 const PromptAsset& prompt = default_entailment_prompt());

/// Strict runs fail on CYCLE or DANGLING_REF violations and on hierarchy
/// conflicts, which are cycles in the judged relation.
bool fails_strict(const BuildResult& result);

}  // namespace ontoekg

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ontoekg/config.hpp"
#include "ontoekg/ingestion.hpp"
#include "ontoekg/llm/backend.hpp"
#include "ontoekg/model.hpp"
#include "ontoekg/prompts.hpp"

namespace ontoekg {

struct ClassCandidate {
  Label label;
  std::string description;

  friend bool operator==(const ClassCandidate&, const ClassCandidate&) = default;
};

struct PropertyCandidate {
  Label label;
  std::string description;
  Label domain;
  Label range;

  friend bool operator==(const PropertyCandidate&, const PropertyCandidate&) = default;
};

/// Raw model output for one document: class and property candidates in
/// the order the model produced them, not yet validated or repaired.
struct ExtractionResult {
  std::vector<ClassCandidate> classes;
  std::vector<PropertyCandidate> properties;

  friend bool operator==(const ExtractionResult&, const ExtractionResult&) = default;
};

/// Strict response schema:
/// {"classes":[{"label","description"}],"properties":[{"label","description","domain","range"}]}
const llm::Json& extraction_response_schema();

llm::Json to_json(const ExtractionResult& r);

/// Inverse of to_json. Throws SCHEMA_FAILURE naming the offending element
/// when the value does not match the schema or a label is invalid.
ExtractionResult extraction_from_json(const llm::Json& j);

struct ExtractionOutcome {
  ExtractionResult result;
  int retries = 0;
  std::size_t segments = 0;
};

/// One schema-constrained request per window of the document (normally a
/// single window). Results of all windows are concatenated in order.
ExtractionOutcome extract_schema(const Document& doc, llm::ChatBackend& backend,
                                 const PipelineConfig& cfg,
                                 const PromptAsset& prompt = default_extraction_prompt());

/// Canonical datatype class name ("Text", "Integer", "Float", "Boolean",
/// "Date", "DateTime", "URL") for a range label from the datatype lexicon,
/// matched case- and punctuation-insensitively.
std::optional<std::string> canonical_datatype(std::string_view label);

bool is_datatype_class_label(std::string_view label);

/// Rewrites datatype ranges to their canonical class and makes sure each
/// such class is present. Idempotent.
ExtractionResult reify_datatypes(ExtractionResult r);

/// Merges class candidates with the same label key (the first non-empty
/// description wins) and identical property candidates (same label,
/// domain and range keys).
ExtractionResult merge_duplicates(ExtractionResult r);

enum class RepairKind { AutoAdd, Drop };

std::string_view to_string(RepairKind kind) noexcept;

struct Repair {
  RepairKind kind;
  std::string property;
  std::string missing;
  std::string reason;

  friend bool operator==(const Repair&, const Repair&) = default;
};

struct Resolution {
  std::vector<ClassCandidate> classes;
  std::vector<PropertyCandidate> properties;
  std::vector<Repair> repairs;
};

/// Makes every property domain/range refer to a class candidate. AUTO_ADD
/// creates the missing class with an empty description; DROP removes the
/// property. One repair is recorded per (property, missing label).
Resolution resolve_references(const ExtractionResult& r,
                              RepairPolicy policy = RepairPolicy::AutoAdd);

/// {"document":id,"kind":"AUTO_ADD"|"DROP","property":label,"missing":label}
nlohmann::ordered_json repair_log_entry(const Repair& repair, const std::string& document_id);

}  // namespace ontoekg

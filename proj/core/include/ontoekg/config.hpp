#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "ontoekg/model.hpp"

namespace ontoekg {

enum class RepairPolicy { AutoAdd, Drop };

std::string_view to_string(RepairPolicy policy) noexcept;

/// Run configuration. Keys in a config file are exactly the member names.
struct PipelineConfig {
  Iri base_iri{kDefaultBaseIri};
  std::string extraction_model = "gemini-3-flash-preview";
  std::string entailment_model = "claude-opus-4-5";
  std::string embedding_model = "text-embedding-3-small";
  double fuzzy_threshold = 0.94;
  std::size_t max_chars_per_request = 16384;
  std::size_t max_entailment_pairs = 2000;
  bool strict_validation = false;

  RepairPolicy repair_policy = RepairPolicy::AutoAdd;
  bool include_annotations = false;
  std::size_t in_flight_cap = 4;
  std::size_t embedding_batch_size = 64;
  std::string llm_api_key_env = "ONTOEKG_LLM_API_KEY";
  std::string embedding_api_key_env = "ONTOEKG_EMBEDDING_API_KEY";
  std::string extraction_prompt_file;
  std::string entailment_prompt_file;

  /// Throws ErrorCode::ConfigError when a field is out of range.
  void check() const;

  /// Applies one key/value pair; unknown keys are a ConfigError.
  void set(const std::string& key, const std::string& value);
};

/// Parses a flat `key = value` document ('#' starts a comment).
std::map<std::string, std::string> parse_key_values(const std::string& text);

PipelineConfig load_config(const std::filesystem::path& path);

}  // namespace ontoekg

#include "ontoekg/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace ontoekg {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::size_t parse_size(const std::string& key, const std::string& value) {
  std::size_t out = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size() || out == 0) {
    throw Error(ErrorCode::ConfigError, key + " must be a positive integer, got '" + value + "'");
  }
  return out;
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    double out = std::stod(value, &used);
    if (used == value.size()) return out;
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::ConfigError, key + " must be a number, got '" + value + "'");
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw Error(ErrorCode::ConfigError, key + " must be true or false, got '" + value + "'");
}

}  // namespace

std::string_view to_string(RepairPolicy policy) noexcept {
  return policy == RepairPolicy::AutoAdd ? "AUTO_ADD" : "DROP";
}

void PipelineConfig::check() const {
  if (!(fuzzy_threshold >= 0.0 && fuzzy_threshold <= 1.0)) {
    throw Error(ErrorCode::ConfigError, "fuzzy_threshold must lie in [0, 1]");
  }
  if (max_chars_per_request == 0 || max_entailment_pairs == 0 || in_flight_cap == 0 ||
      embedding_batch_size == 0) {
    throw Error(ErrorCode::ConfigError, "size limits must be positive");
  }
  if (extraction_model.empty() || entailment_model.empty() || embedding_model.empty()) {
    throw Error(ErrorCode::ConfigError, "model names must not be empty");
  }
}

void PipelineConfig::set(const std::string& key, const std::string& value) {
  if (key == "base_iri") {
    if (!is_valid_iri(value)) throw Error(ErrorCode::ConfigError, "base_iri is not an absolute IRI");
    base_iri = Iri(value);
  } else if (key == "extraction_model") {
    extraction_model = value;
  } else if (key == "entailment_model") {
    entailment_model = value;
  } else if (key == "embedding_model") {
    embedding_model = value;
  } else if (key == "fuzzy_threshold") {
    fuzzy_threshold = parse_double(key, value);
  } else if (key == "max_chars_per_request") {
    max_chars_per_request = parse_size(key, value);
  } else if (key == "max_entailment_pairs") {
    max_entailment_pairs = parse_size(key, value);
  } else if (key == "strict_validation") {
    strict_validation = parse_bool(key, value);
  } else if (key == "repair_policy") {
    if (value == "AUTO_ADD" || value == "auto_add") {
      repair_policy = RepairPolicy::AutoAdd;
    } else if (value == "DROP" || value == "drop") {
      repair_policy = RepairPolicy::Drop;
    } else {
      throw Error(ErrorCode::ConfigError, "repair_policy must be AUTO_ADD or DROP");
    }
  } else if (key == "include_annotations") {
    include_annotations = parse_bool(key, value);
  } else if (key == "in_flight_cap") {
    in_flight_cap = parse_size(key, value);
  } else if (key == "embedding_batch_size") {
    embedding_batch_size = parse_size(key, value);
  } else if (key == "llm_api_key_env") {
    llm_api_key_env = value;
  } else if (key == "embedding_api_key_env") {
    embedding_api_key_env = value;
  } else if (key == "extraction_prompt_file") {
    extraction_prompt_file = value;
  } else if (key == "entailment_prompt_file") {
    entailment_prompt_file = value;
  } else {
    throw Error(ErrorCode::ConfigError, "unknown config key '" + key + "'");
  }
}

std::map<std::string, std::string> parse_key_values(const std::string& text) {
  std::map<std::string, std::string> out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    // '#' opens a comment only at line start or after whitespace, so IRIs
    // with fragments survive.
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '#' && (i == 0 || line[i - 1] == ' ' || line[i - 1] == '\t')) {
        line.erase(i);
        break;
      }
    }
    line = trim(line);
    if (line.empty()) continue;
    auto sep = line.find_first_of("=:");
    if (sep == std::string::npos) {
      throw Error(ErrorCode::ConfigError,
                  "line " + std::to_string(lineno) + ": expected key = value");
    }
    std::string key = trim(line.substr(0, sep));
    std::string value = trim(line.substr(sep + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      value = value.substr(1, value.size() - 2);
    }
    if (key.empty()) {
      throw Error(ErrorCode::ConfigError, "line " + std::to_string(lineno) + ": empty key");
    }
    out[key] = value;
  }
  return out;
}

PipelineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ConfigError, "cannot read config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  PipelineConfig cfg;
  for (const auto& [key, value] : parse_key_values(ss.str())) cfg.set(key, value);
  cfg.check();
  return cfg;
}

}  // namespace ontoekg

#include "ontoekg/prompts.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ontoekg/error.hpp"
#include "ontoekg/llm/cassette.hpp"
#include "ontoekg_prompts_generated.hpp"

namespace ontoekg {

std::string PromptAsset::sha256() const { return llm::sha256_hex(text); }

PromptAsset default_extraction_prompt() {
  return {"extraction", "extraction-v1", prompts::generated::kExtractionV1};
}

PromptAsset default_entailment_prompt() {
  return {"entailment", "entailment-v1", prompts::generated::kEntailmentV1};
}

PromptAsset prompt_from_file(const std::string& name, const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ConfigError, "cannot read prompt file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return {name, "file:" + std::filesystem::path(path).filename().string(), ss.str()};
}

}  // namespace ontoekg

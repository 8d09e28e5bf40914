#pragma once

#include <string>

namespace ontoekg {

/// A system prompt plus the identifiers recorded in run manifests. The
/// bundled defaults are this project's own wording; override them with
/// the *_prompt_file config keys.
struct PromptAsset {
  std::string name;
  std::string version;
  std::string text;

  std::string sha256() const;
};

PromptAsset default_extraction_prompt();
PromptAsset default_entailment_prompt();

/// Loads a prompt override; version is "file:<name>".
PromptAsset prompt_from_file(const std::string& name, const std::string& path);

}  // namespace ontoekg

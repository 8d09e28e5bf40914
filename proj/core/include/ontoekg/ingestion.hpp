#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ontoekg {

struct Document {
  std::string id;
  std::string text;
  std::filesystem::path source;
  std::optional<std::string> sector_tag;
};

struct LoadError {
  std::filesystem::path path;
  std::string message;
};

struct Corpus {
  std::vector<Document> documents;
  std::vector<LoadError> errors;
};

/// Loads one file or every `.txt` file below a directory, ordered by path.
/// Files inside a sub-directory of the root take the first directory name
/// under the root as their sector tag. Empty or non-UTF-8 files become LoadErrors
/// and loading continues; a missing path throws MISSING_PATH.
Corpus load_corpus(const std::filesystem::path& path);

bool is_valid_utf8(std::string_view text) noexcept;

inline constexpr std::size_t kMinWindowChars = 512;

/// Splits text into segments of at most max_chars bytes, cutting after the
/// last paragraph break that fits and falling back to a hard cut (on a
/// UTF-8 boundary) inside oversized paragraphs. Joining the segments gives
/// back the input exactly.
std::vector<std::string> window(std::string_view text, std::size_t max_chars);

inline std::vector<std::string> window(const Document& doc, std::size_t max_chars) {
  return window(doc.text, max_chars);
}

}  // namespace ontoekg

#include "ontoekg/ingestion.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "ontoekg/error.hpp"

namespace fs = std::filesystem;

namespace ontoekg {

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::MissingPath, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(),
                     [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; });
}

bool is_continuation(char c) { return (static_cast<unsigned char>(c) & 0xC0) == 0x80; }

}  // namespace

bool is_valid_utf8(std::string_view text) noexcept {
  std::size_t i = 0;
  while (i < text.size()) {
    const auto c = static_cast<unsigned char>(text[i]);
    std::size_t len;
    char32_t cp;
    if (c < 0x80) {
      ++i;
      continue;
    } else if ((c & 0xE0) == 0xC0) {
      len = 2;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      len = 3;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      len = 4;
      cp = c & 0x07;
    } else {
      return false;
    }
    if (i + len > text.size()) return false;
    for (std::size_t k = 1; k < len; ++k) {
      if (!is_continuation(text[i + k])) return false;
      cp = (cp << 6) | (static_cast<unsigned char>(text[i + k]) & 0x3F);
    }
    // Overlong forms, surrogates and out-of-range code points.
    if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) || (len == 4 && cp < 0x10000) ||
        (cp >= 0xD800 && cp <= 0xDFFF) || cp > 0x10FFFF) {
      return false;
    }
    i += len;
  }
  return true;
}

Corpus load_corpus(const fs::path& path) {
  std::error_code ec;
  if (!fs::exists(path, ec)) {
    throw Error(ErrorCode::MissingPath, "input path does not exist: " + path.string());
  }

  std::vector<fs::path> files;
  const bool is_dir = fs::is_directory(path);
  if (is_dir) {
    for (const auto& entry : fs::recursive_directory_iterator(path)) {
      if (entry.is_regular_file() && entry.path().extension() == ".txt") {
        files.push_back(entry.path());
      }
    }
    std::sort(files.begin(), files.end());
  } else {
    files.push_back(path);
  }

  Corpus corpus;
  for (const auto& file : files) {
    std::string text;
    try {
      text = read_file(file);
    } catch (const Error& e) {
      corpus.errors.push_back({file, e.what()});
      continue;
    }
    if (!is_valid_utf8(text)) {
      corpus.errors.push_back({file, "file is not valid UTF-8"});
      continue;
    }
    if (blank(text)) {
      corpus.errors.push_back({file, "file is empty"});
      continue;
    }
    Document doc{file.stem().string(), std::move(text), file, std::nullopt};
    if (is_dir) {
      const fs::path rel = file.lexically_relative(path);
      if (std::distance(rel.begin(), rel.end()) > 1) doc.sector_tag = rel.begin()->string();
    }
    corpus.documents.push_back(std::move(doc));
  }
  return corpus;
}

std::vector<std::string> window(std::string_view text, std::size_t max_chars) {
  if (max_chars < kMinWindowChars) {
    throw Error(ErrorCode::InvalidArgument,
                "window size must be at least " + std::to_string(kMinWindowChars));
  }
  std::vector<std::string> segments;
  std::size_t pos = 0;
  while (text.size() - pos > max_chars) {
    const std::string_view span = text.substr(pos, max_chars);
    std::size_t cut = 0;
    // Cut after the last blank-line separator that fits in the window.
    if (const std::size_t sep = span.rfind("\n\n"); sep != std::string_view::npos && sep > 0) {
      cut = sep + 2;
      while (cut < span.size() && span[cut] == '\n') ++cut;
    }
    if (cut == 0) {
      cut = max_chars;
      while (cut > 0 && is_continuation(text[pos + cut])) --cut;
      if (cut == 0) cut = max_chars;
    }
    segments.emplace_back(text.substr(pos, cut));
    pos += cut;
  }
  if (pos < text.size() || segments.empty()) segments.emplace_back(text.substr(pos));
  return segments;
}

}  // namespace ontoekg

#pragma once

#include <deque>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "ontoekg/llm/backend.hpp"

namespace ontoekg::llm {

/// Hex SHA-256 of the canonical JSON of (model, system_prompt,
/// user_content, response_schema). Stable across runs and platforms.
std::string request_key(const ChatRequest& request);

/// Hex SHA-256 of the canonical JSON of (model, text).
std::string embedding_key(const std::string& model, const std::string& text);

std::string sha256_hex(std::string_view data);

/// One stored request/response. `kind` is "chat" or "embedding"; the
/// payload carries the response (content + usage, or the vector) and a
/// readable copy of the request.
struct CassetteEntry {
  std::string key;
  std::string kind;
  Json payload;

  Json to_json() const;
  static CassetteEntry from_json(const Json& j);
};

/// JSON Lines store of CassetteEntry records. Lookups and appends are
/// serialised; appends are flushed line by line so an interrupted
/// recording keeps everything captured so far.
class Cassette {
 public:
  Cassette() = default;

  /// Adds the entries of an existing file; a missing file adds nothing.
  void load(const std::filesystem::path& path);

  /// Opens `path` for appending new entries (created when missing).
  void open_for_append(const std::filesystem::path& path);

  void append(CassetteEntry entry);

  std::optional<CassetteEntry> find(const std::string& key) const;

  /// Next unconsumed chat entry in file order (sequence-mode replay).
  std::optional<CassetteEntry> next_chat();

  std::size_t size() const;
  std::vector<CassetteEntry> entries() const;

 private:
  mutable std::mutex mutex_;
  std::vector<CassetteEntry> entries_;
  std::map<std::string, std::size_t> by_key_;
  std::size_t sequence_cursor_ = 0;
  std::ofstream sink_;
};

enum class ReplayMatch { ByKey, Sequence };

/// Passes requests to `inner` and stores every response in the cassette.
class RecordingChatBackend final : public ChatBackend {
 public:
  RecordingChatBackend(ChatBackend& inner, Cassette& cassette, std::size_t in_flight_cap = 4);
  std::string_view mode() const override { return "record"; }

 protected:
  RawCompletion fetch(const ChatRequest& request) override;

 private:
  ChatBackend& inner_;
  Cassette& cassette_;
};

/// Serves responses from a cassette only. A request with no stored entry
/// raises CASSETTE_MISS naming the request hash.
class ReplayChatBackend final : public ChatBackend {
 public:
  explicit ReplayChatBackend(Cassette& cassette, ReplayMatch match = ReplayMatch::ByKey,
                             std::size_t in_flight_cap = 4);
  std::string_view mode() const override { return "replay"; }

 protected:
  RawCompletion fetch(const ChatRequest& request) override;

 private:
  Cassette& cassette_;
  ReplayMatch match_;
};

class RecordingEmbeddingBackend final : public EmbeddingBackend {
 public:
  RecordingEmbeddingBackend(EmbeddingBackend& inner, Cassette& cassette,
                            std::size_t batch_size = 64);
  std::string_view mode() const override { return "record"; }

 protected:
  std::vector<Vector> fetch(std::span<const std::string> batch) override;

 private:
  EmbeddingBackend& inner_;
  Cassette& cassette_;
};

class ReplayEmbeddingBackend final : public EmbeddingBackend {
 public:
  ReplayEmbeddingBackend(std::string model, Cassette& cassette, std::size_t batch_size = 64);
  std::string_view mode() const override { return "replay"; }

 protected:
  std::vector<Vector> fetch(std::span<const std::string> batch) override;

 private:
  Cassette& cassette_;
};

}  // namespace ontoekg::llm

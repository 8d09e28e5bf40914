#pragma once

#include <deque>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "ontoekg/llm/backend.hpp"

namespace ontoekg::llm {

/// Returns queued replies in FIFO order and remembers every request it
/// saw. Running out of replies is a BACKEND_ERROR.
class ScriptedChatBackend final : public ChatBackend {
 public:
  ScriptedChatBackend() : ChatBackend(1) {}
  explicit ScriptedChatBackend(std::vector<std::string> replies);

  void push(std::string content);
  void push_error(ErrorCode code, std::string message);

  std::vector<ChatRequest> requests() const;
  std::size_t remaining() const;

  std::string_view mode() const override { return "mock"; }

 protected:
  RawCompletion fetch(const ChatRequest& request) override;

 private:
  struct Reply {
    std::string content;
    std::optional<ErrorCode> error;
  };
  mutable std::mutex mutex_;
  std::deque<Reply> replies_;
  std::vector<ChatRequest> requests_;
};

/// Offline stand-in used by `--llm-mode mock`. Answers from a JSON answer
/// sheet when it covers the request and falls back to simple heuristics
/// otherwise. Replies depend only on the request, so it is safe under
/// concurrency and fully deterministic.
///
/// Answer sheet layout:
///   {"extraction": {"<document id>": {"classes": [...], "properties": [...]}},
///    "entailment": {"holds": [{"sub": "A", "sup": "B", "rationale": "..."}]}}
///
/// Heuristics: extraction proposes capitalised non-sentence-initial terms
/// as classes; entailment accepts A ⊑ B when B's label is a proper suffix
/// of A's (head-noun rule, "DataPolicy" ⊑ "Policy").
class MockChatBackend final : public ChatBackend {
 public:
  explicit MockChatBackend(Json answer_sheet = Json::object(), std::size_t in_flight_cap = 4);
  std::string_view mode() const override { return "mock"; }

 protected:
  RawCompletion fetch(const ChatRequest& request) override;

 private:
  Json sheet_;
};

/// Deterministic offline embedder: signed feature hashing of character
/// trigrams over the lowercased alphanumeric form of the text. Equal
/// strings (and strings differing only in case, spacing or punctuation)
/// get equal vectors; unrelated strings are nearly orthogonal.
class HashEmbedder final : public EmbeddingBackend {
 public:
  explicit HashEmbedder(std::size_t dimension = 1024, std::size_t batch_size = 64);
  std::string_view mode() const override { return "mock"; }

 protected:
  std::vector<Vector> fetch(std::span<const std::string> batch) override;

 private:
  std::size_t dimension_;
};

/// Equal strings map to the same basis vector and distinct strings to
/// orthogonal ones, which turns fuzzy matching into exact matching.
class IdentityEmbedder final : public EmbeddingBackend {
 public:
  explicit IdentityEmbedder(std::size_t capacity = 4096);
  std::string_view mode() const override { return "mock"; }

 protected:
  std::vector<Vector> fetch(std::span<const std::string> batch) override;

 private:
  std::size_t capacity_;
  std::mutex mutex_;
  std::map<std::string, std::size_t> slots_;
};

/// Serves hand-set vectors; unknown texts are an EMBEDDING_FAILURE.
class FixedEmbedder final : public EmbeddingBackend {
 public:
  explicit FixedEmbedder(std::map<std::string, Vector> table);
  std::string_view mode() const override { return "mock"; }

 protected:
  std::vector<Vector> fetch(std::span<const std::string> batch) override;

 private:
  std::map<std::string, Vector> table_;
};

}  // namespace ontoekg::llm

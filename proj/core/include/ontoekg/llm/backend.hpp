#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <semaphore>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "ontoekg/error.hpp"

namespace ontoekg::llm {

using Json = nlohmann::json;
using Vector = std::vector<double>;

/// Single-turn, schema-constrained chat request.
struct ChatRequest {
  std::string model;
  std::string system_prompt;
  std::string user_content;
  Json response_schema = Json::object();
  double temperature = 0.0;
  /// Caller-side metadata (pipeline stage, labels). Never sent to a
  /// provider and not part of the cassette key.
  Json context = nullptr;
};

struct TokenUsage {
  std::int64_t prompt_tokens = 0;
  std::int64_t completion_tokens = 0;
};

struct ChatResponse {
  std::string content;
  /// Present iff content is JSON that satisfies the request schema.
  std::optional<Json> parsed;
  /// Why parsed is absent; empty when it is present.
  std::string schema_error;
  TokenUsage usage;
};

/// Raw provider output before schema validation.
struct RawCompletion {
  std::string content;
  TokenUsage usage;
};

/// Shared behaviour of every chat backend: caps in-flight requests and
/// validates content against the request schema. Concrete backends only
/// produce raw content.
class ChatBackend {
 public:
  explicit ChatBackend(std::size_t in_flight_cap = 4);
  virtual ~ChatBackend() = default;
  ChatBackend(const ChatBackend&) = delete;
  ChatBackend& operator=(const ChatBackend&) = delete;

  ChatResponse complete(const ChatRequest& request);

  /// live, record, replay or mock.
  virtual std::string_view mode() const = 0;

 protected:
  virtual RawCompletion fetch(const ChatRequest& request) = 0;

 private:
  std::counting_semaphore<> slots_;
};

/// Validates raw content against a schema; fills parsed or schema_error.
ChatResponse validate_completion(RawCompletion raw, const Json& schema);

/// Shared behaviour of every embedding backend: per-run cache keyed by
/// text, batching, L2 normalisation and dimension checks.
class EmbeddingBackend {
 public:
  EmbeddingBackend(std::string model, std::size_t batch_size = 64);
  virtual ~EmbeddingBackend() = default;
  EmbeddingBackend(const EmbeddingBackend&) = delete;
  EmbeddingBackend& operator=(const EmbeddingBackend&) = delete;

  /// One unit-norm vector per input, in input order.
  std::vector<Vector> embed(std::span<const std::string> texts);

  const std::string& model() const noexcept { return model_; }
  virtual std::string_view mode() const = 0;

  /// Number of texts sent to fetch() so far (cache hits excluded).
  std::size_t fetched_count() const;

 protected:
  virtual std::vector<Vector> fetch(std::span<const std::string> batch) = 0;

 private:
  std::string model_;
  std::size_t batch_size_;
  mutable std::mutex mutex_;
  std::unordered_map<std::string, Vector> cache_;
  std::size_t fetched_ = 0;
};

/// In-place L2 normalisation. Throws EMBEDDING_FAILURE on a zero vector.
void normalize(Vector& v);

double dot(const Vector& a, const Vector& b);

}  // namespace ontoekg::llm

#include "ontoekg/llm/backend.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "ontoekg/llm/schema.hpp"

namespace ontoekg::llm {

namespace {

// Models occasionally wrap JSON in a markdown fence despite instructions.
std::string_view strip_fence(std::string_view s) {
  auto trim = [](std::string_view v) {
    while (!v.empty() && std::isspace(static_cast<unsigned char>(v.front()))) v.remove_prefix(1);
    while (!v.empty() && std::isspace(static_cast<unsigned char>(v.back()))) v.remove_suffix(1);
    return v;
  };
  s = trim(s);
  if (!s.starts_with("```") || !s.ends_with("```") || s.size() < 6) return s;
  s.remove_suffix(3);
  s.remove_prefix(3);
  if (auto nl = s.find('\n'); nl != std::string_view::npos) s.remove_prefix(nl + 1);
  return trim(s);
}

}  // namespace

ChatResponse validate_completion(RawCompletion raw, const Json& schema) {
  ChatResponse out{std::move(raw.content), std::nullopt, "", raw.usage};
  Json value = Json::parse(strip_fence(out.content), nullptr, false);
  if (value.is_discarded()) {
    out.schema_error = "response is not valid JSON";
    return out;
  }
  if (auto err = schema_violation(schema, value)) {
    out.schema_error = "response does not match the schema: " + *err;
    return out;
  }
  out.parsed = std::move(value);
  return out;
}

ChatBackend::ChatBackend(std::size_t in_flight_cap)
    : slots_(static_cast<std::ptrdiff_t>(in_flight_cap == 0 ? 1 : in_flight_cap)) {}

ChatResponse ChatBackend::complete(const ChatRequest& request) {
  if (request.model.empty() || request.user_content.empty()) {
    throw Error(ErrorCode::InvalidArgument, "chat request needs a model and user content");
  }
  slots_.acquire();
  RawCompletion raw;
  try {
    raw = fetch(request);
  } catch (...) {
    slots_.release();
    throw;
  }
  slots_.release();
  return validate_completion(std::move(raw), request.response_schema);
}

void normalize(Vector& v) {
  double norm = 0.0;
  for (double x : v) norm += x * x;
  norm = std::sqrt(norm);
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw Error(ErrorCode::EmbeddingFailure, "cannot normalise a zero or non-finite vector");
  }
  for (double& x : v) x /= norm;
}

double dot(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::EmbeddingFailure, "embedding dimension mismatch");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

EmbeddingBackend::EmbeddingBackend(std::string model, std::size_t batch_size)
    : model_(std::move(model)), batch_size_(batch_size == 0 ? 1 : batch_size) {}

std::size_t EmbeddingBackend::fetched_count() const {
  std::lock_guard lock(mutex_);
  return fetched_;
}

std::vector<Vector> EmbeddingBackend::embed(std::span<const std::string> texts) {
  if (texts.empty()) throw Error(ErrorCode::InvalidArgument, "embed() needs at least one text");

  std::vector<std::string> missing;
  {
    std::lock_guard lock(mutex_);
    for (const auto& t : texts) {
      if (!cache_.contains(t) && std::find(missing.begin(), missing.end(), t) == missing.end()) {
        missing.push_back(t);
      }
    }
  }

  for (std::size_t start = 0; start < missing.size(); start += batch_size_) {
    const std::size_t n = std::min(batch_size_, missing.size() - start);
    std::span<const std::string> batch(missing.data() + start, n);
    auto vectors = fetch(batch);
    if (vectors.size() != n) {
      throw Error(ErrorCode::EmbeddingFailure, "backend returned " + std::to_string(vectors.size()) +
                                                   " vectors for " + std::to_string(n) + " texts");
    }
    for (std::size_t i = 1; i < vectors.size(); ++i) {
      if (vectors[i].size() != vectors[0].size()) {
        throw Error(ErrorCode::EmbeddingFailure, "dimension mismatch across a batch");
      }
    }
    std::lock_guard lock(mutex_);
    fetched_ += n;
    for (std::size_t i = 0; i < n; ++i) {
      normalize(vectors[i]);
      cache_.emplace(batch[i], std::move(vectors[i]));
    }
  }

  std::lock_guard lock(mutex_);
  std::vector<Vector> out;
  out.reserve(texts.size());
  for (const auto& t : texts) out.push_back(cache_.at(t));
  if (!out.empty()) {
    for (const auto& v : out) {
      if (v.size() != out.front().size()) {
        throw Error(ErrorCode::EmbeddingFailure, "dimension mismatch across a batch");
      }
    }
  }
  return out;
}

}  // namespace ontoekg::llm

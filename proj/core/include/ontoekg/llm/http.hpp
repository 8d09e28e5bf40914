#pragma once

#include <chrono>
#include <functional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "ontoekg/llm/backend.hpp"

namespace ontoekg::llm {

inline constexpr const char* kForbidNetworkEnv = "ONTOEKG_FORBID_NETWORK";

using Headers = std::vector<std::pair<std::string, std::string>>;

struct HttpResult {
  int status = 0;  // 0 means the request never got a response
  std::string body;
  std::string transport_error;
};

/// POSTs a JSON body to `path` under the transport's base URL.
using HttpTransport =
    std::function<HttpResult(const std::string& path, const std::string& body, const Headers&)>;

/// cpp-httplib transport for an http(s) base URL such as
/// "https://api.openai.com/v1". Throws NETWORK_FORBIDDEN when the
/// ONTOEKG_FORBID_NETWORK environment variable is set (test suites set it).
HttpTransport make_http_transport(const std::string& base_url);

bool network_forbidden() noexcept;

struct RetryPolicy {
  int attempts = 3;
  std::chrono::milliseconds base_delay{1000};
  double jitter = 0.25;  // +/- fraction of the nominal delay
  std::function<void(std::chrono::milliseconds)> sleep;  // defaults to this_thread::sleep_for
};

/// Nominal delay base * 2^(attempt-1), scaled by a uniform jitter factor.
std::chrono::milliseconds backoff_delay(const RetryPolicy& policy, int attempt,
                                        std::mt19937_64& rng);

/// OpenAI-compatible chat-completions body with a strict json_schema
/// response format.
Json chat_request_body(const ChatRequest& request);

/// Pulls content and usage out of a chat-completions response body.
RawCompletion parse_chat_response_body(const std::string& body);

/// Chat backend over any chat-completions style endpoint. 401/403 map to
/// AUTH_ERROR; 429 and 5xx/transport failures are retried with backoff and
/// end as RATE_LIMITED or BACKEND_ERROR.
class HttpChatBackend final : public ChatBackend {
 public:
  HttpChatBackend(std::string api_key, HttpTransport transport, RetryPolicy retry = {},
                  std::size_t in_flight_cap = 4);
  std::string_view mode() const override { return "live"; }

 protected:
  RawCompletion fetch(const ChatRequest& request) override;

 private:
  std::string api_key_;
  HttpTransport transport_;
  RetryPolicy retry_;
  std::mutex rng_mutex_;
  std::mt19937_64 rng_{0x5eed};
};

/// Embedding backend over an OpenAI-compatible /embeddings endpoint.
class HttpEmbeddingBackend final : public EmbeddingBackend {
 public:
  HttpEmbeddingBackend(std::string model, std::string api_key, HttpTransport transport,
                       RetryPolicy retry = {}, std::size_t batch_size = 64);
  std::string_view mode() const override { return "live"; }

 protected:
  std::vector<Vector> fetch(std::span<const std::string> batch) override;

 private:
  std::string api_key_;
  HttpTransport transport_;
  RetryPolicy retry_;
  std::mutex rng_mutex_;
  std::mt19937_64 rng_{0x5eed};
};

/// Reads an API key from the named environment variable or throws
/// AUTH_ERROR naming the variable.
std::string api_key_from_env(const std::string& variable);

}  // namespace ontoekg::llm

#include "ontoekg/llm/http.hpp"

#include "httplib.h"

#include <cstdlib>
#include <thread>

namespace ontoekg::llm {

bool network_forbidden() noexcept {
  const char* v = std::getenv(kForbidNetworkEnv);
  return v != nullptr && *v != '\0' && std::string_view(v) != "0";
}

HttpTransport make_http_transport(const std::string& base_url) {
  if (network_forbidden()) {
    throw Error(ErrorCode::NetworkForbidden,
                std::string("live network access is disabled by ") + kForbidNetworkEnv);
  }
  const auto scheme_end = base_url.find("://");
  if (scheme_end == std::string::npos) {
    throw Error(ErrorCode::ConfigError, "base URL needs a scheme: " + base_url);
  }
  const auto path_start = base_url.find('/', scheme_end + 3);
  const std::string origin = base_url.substr(0, path_start);
  std::string prefix = path_start == std::string::npos ? "" : base_url.substr(path_start);
  while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();

  // One client per request: httplib clients are not safe to share between
  // threads, and the backend already caps concurrency.
  return [origin, prefix](const std::string& path, const std::string& body,
                          const Headers& headers) -> HttpResult {
    httplib::Client client(origin);
    client.set_connection_timeout(std::chrono::seconds(30));
    client.set_read_timeout(std::chrono::seconds(180));
    httplib::Headers h;
    for (const auto& [k, v] : headers) h.emplace(k, v);
    auto res = client.Post(prefix + path, h, body, "application/json");
    if (!res) return HttpResult{0, "", httplib::to_string(res.error())};
    return HttpResult{res->status, res->body, ""};
  };
}

std::chrono::milliseconds backoff_delay(const RetryPolicy& policy, int attempt,
                                        std::mt19937_64& rng) {
  const double nominal =
      static_cast<double>(policy.base_delay.count()) * static_cast<double>(1LL << (attempt - 1));
  std::uniform_real_distribution<double> jitter(1.0 - policy.jitter, 1.0 + policy.jitter);
  return std::chrono::milliseconds(static_cast<long long>(nominal * jitter(rng)));
}

namespace {

std::string post_with_retry(const HttpTransport& transport, const std::string& path,
                            const Json& body, const std::string& api_key,
                            const RetryPolicy& retry, std::mt19937_64& rng,
                            std::mutex* rng_mutex) {
  const Headers headers = {{"Authorization", "Bearer " + api_key}};
  const std::string payload = body.dump();
  HttpResult last;
  for (int attempt = 1; attempt <= retry.attempts; ++attempt) {
    last = transport(path, payload, headers);
    if (last.status >= 200 && last.status < 300) return last.body;
    if (last.status == 401 || last.status == 403) {
      throw Error(ErrorCode::AuthError,
                  "provider rejected the credentials (HTTP " + std::to_string(last.status) + ")");
    }
    const bool transient = last.status == 0 || last.status == 408 || last.status == 429 ||
                           last.status >= 500;
    if (!transient) {
      throw Error(ErrorCode::BackendError,
                  "HTTP " + std::to_string(last.status) + ": " + last.body.substr(0, 500));
    }
    if (attempt < retry.attempts) {
      std::chrono::milliseconds delay;
      if (rng_mutex != nullptr) {
        std::lock_guard lock(*rng_mutex);
        delay = backoff_delay(retry, attempt, rng);
      } else {
        delay = backoff_delay(retry, attempt, rng);
      }
      if (retry.sleep) {
        retry.sleep(delay);
      } else {
        std::this_thread::sleep_for(delay);
      }
    }
  }
  if (last.status == 429) {
    throw Error(ErrorCode::RateLimited,
                "rate limited after " + std::to_string(retry.attempts) + " attempts");
  }
  throw Error(ErrorCode::BackendError,
              "request failed after " + std::to_string(retry.attempts) + " attempts: " +
                  (last.status == 0 ? last.transport_error : "HTTP " + std::to_string(last.status)));
}

}  // namespace

Json chat_request_body(const ChatRequest& request) {
  Json messages = Json::array();
  if (!request.system_prompt.empty()) {
    messages.push_back({{"role", "system"}, {"content", request.system_prompt}});
  }
  messages.push_back({{"role", "user"}, {"content", request.user_content}});
  return Json{
      {"model", request.model},
      {"messages", messages},
      {"temperature", request.temperature},
      {"response_format",
       {{"type", "json_schema"},
        {"json_schema", {{"name", "response"}, {"strict", true}, {"schema", request.response_schema}}}}},
  };
}

RawCompletion parse_chat_response_body(const std::string& body) {
  Json j = Json::parse(body, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw Error(ErrorCode::BackendError, "provider response is not a JSON object");
  }
  try {
    RawCompletion out;
    const Json& message = j.at("choices").at(0).at("message");
    if (message.contains("content") && message["content"].is_string()) {
      out.content = message["content"].get<std::string>();
    }
    if (auto it = j.find("usage"); it != j.end() && it->is_object()) {
      out.usage.prompt_tokens = it->value("prompt_tokens", std::int64_t{0});
      out.usage.completion_tokens = it->value("completion_tokens", std::int64_t{0});
    }
    return out;
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::BackendError, std::string("unexpected provider response shape: ") + e.what());
  }
}

HttpChatBackend::HttpChatBackend(std::string api_key, HttpTransport transport, RetryPolicy retry,
                                 std::size_t in_flight_cap)
    : ChatBackend(in_flight_cap),
      api_key_(std::move(api_key)),
      transport_(std::move(transport)),
      retry_(std::move(retry)) {}

RawCompletion HttpChatBackend::fetch(const ChatRequest& request) {
  const std::string body = post_with_retry(transport_, "/chat/completions",
                                           chat_request_body(request), api_key_, retry_, rng_,
                                           &rng_mutex_);
  return parse_chat_response_body(body);
}

HttpEmbeddingBackend::HttpEmbeddingBackend(std::string model, std::string api_key,
                                           HttpTransport transport, RetryPolicy retry,
                                           std::size_t batch_size)
    : EmbeddingBackend(std::move(model), batch_size),
      api_key_(std::move(api_key)),
      transport_(std::move(transport)),
      retry_(std::move(retry)) {}

std::vector<Vector> HttpEmbeddingBackend::fetch(std::span<const std::string> batch) {
  const Json body = {{"model", model()}, {"input", std::vector<std::string>(batch.begin(), batch.end())}};
  const std::string text = post_with_retry(transport_, "/embeddings", body, api_key_, retry_, rng_,
                                      &rng_mutex_);
  Json j = Json::parse(text, nullptr, false);
  try {
    std::vector<Vector> out(batch.size());
    for (const auto& item : j.at("data")) {
      const auto index = item.at("index").get<std::size_t>();
      if (index >= out.size()) throw Error(ErrorCode::EmbeddingFailure, "embedding index out of range");
      out[index] = item.at("embedding").get<Vector>();
    }
    for (const auto& v : out) {
      if (v.empty()) throw Error(ErrorCode::EmbeddingFailure, "provider omitted an embedding");
    }
    return out;
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::EmbeddingFailure, std::string("unexpected embedding response: ") + e.what());
  }
}

std::string api_key_from_env(const std::string& variable) {
  const char* v = std::getenv(variable.c_str());
  if (v == nullptr || *v == '\0') {
    throw Error(ErrorCode::AuthError, "environment variable " + variable + " is not set");
  }
  return v;
}

}  // namespace ontoekg::llm

#include "ontoekg/llm/cassette.hpp"

#include <openssl/evp.h>

#include <array>
#include <memory>

namespace ontoekg::llm {

std::string sha256_hex(std::string_view data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest.data(), &len) != 1) {
    throw Error(ErrorCode::BackendError, "SHA-256 computation failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xF]);
  }
  return out;
}

// nlohmann::json objects keep keys sorted, so dump() is canonical.
std::string request_key(const ChatRequest& request) {
  const Json canonical = {
      {"model", request.model},
      {"system_prompt", request.system_prompt},
      {"user_content", request.user_content},
      {"response_schema", request.response_schema},
  };
  return sha256_hex(canonical.dump());
}

std::string embedding_key(const std::string& model, const std::string& text) {
  const Json canonical = {{"model", model}, {"text", text}};
  return sha256_hex(canonical.dump());
}

Json CassetteEntry::to_json() const {
  return Json{{"key", key}, {"kind", kind}, {"payload", payload}};
}

CassetteEntry CassetteEntry::from_json(const Json& j) {
  if (!j.is_object() || !j.contains("key") || !j.contains("kind") || !j.contains("payload")) {
    throw Error(ErrorCode::BackendError, "malformed cassette entry");
  }
  return CassetteEntry{j.at("key").get<std::string>(), j.at("kind").get<std::string>(),
                       j.at("payload")};
}

void Cassette::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) return;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    Json j = Json::parse(line, nullptr, false);
    if (j.is_discarded()) {
      throw Error(ErrorCode::BackendError, path.string() + ":" + std::to_string(lineno) +
                                               ": cassette line is not valid JSON");
    }
    auto entry = CassetteEntry::from_json(j);
    std::lock_guard lock(mutex_);
    by_key_.emplace(entry.key, entries_.size());
    entries_.push_back(std::move(entry));
  }
}

void Cassette::open_for_append(const std::filesystem::path& path) {
  std::lock_guard lock(mutex_);
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  sink_.open(path, std::ios::app);
  if (!sink_) throw Error(ErrorCode::BackendError, "cannot open cassette " + path.string());
}

void Cassette::append(CassetteEntry entry) {
  std::lock_guard lock(mutex_);
  if (sink_.is_open()) {
    sink_ << entry.to_json().dump() << '\n';
    sink_.flush();
  }
  by_key_.emplace(entry.key, entries_.size());
  entries_.push_back(std::move(entry));
}

std::optional<CassetteEntry> Cassette::find(const std::string& key) const {
  std::lock_guard lock(mutex_);
  auto it = by_key_.find(key);
  if (it == by_key_.end()) return std::nullopt;
  return entries_[it->second];
}

std::optional<CassetteEntry> Cassette::next_chat() {
  std::lock_guard lock(mutex_);
  while (sequence_cursor_ < entries_.size()) {
    const auto& e = entries_[sequence_cursor_++];
    if (e.kind == "chat") return e;
  }
  return std::nullopt;
}

std::size_t Cassette::size() const {
  std::lock_guard lock(mutex_);
  return entries_.size();
}

std::vector<CassetteEntry> Cassette::entries() const {
  std::lock_guard lock(mutex_);
  return entries_;
}

// ---------------------------------------------------------------------------

namespace {

RawCompletion completion_from(const CassetteEntry& entry) {
  const Json& p = entry.payload;
  RawCompletion raw;
  raw.content = p.at("response").at("content").get<std::string>();
  if (auto it = p.at("response").find("usage"); it != p.at("response").end()) {
    raw.usage.prompt_tokens = it->value("prompt_tokens", std::int64_t{0});
    raw.usage.completion_tokens = it->value("completion_tokens", std::int64_t{0});
  }
  return raw;
}

}  // namespace

RecordingChatBackend::RecordingChatBackend(ChatBackend& inner, Cassette& cassette,
                                           std::size_t in_flight_cap)
    : ChatBackend(in_flight_cap), inner_(inner), cassette_(cassette) {}

RawCompletion RecordingChatBackend::fetch(const ChatRequest& request) {
  ChatResponse response = inner_.complete(request);
  Json payload = {
      {"request",
       {{"model", request.model},
        {"system_prompt_sha256", sha256_hex(request.system_prompt)},
        {"user_content", request.user_content}}},
      {"response",
       {{"content", response.content},
        {"usage",
         {{"prompt_tokens", response.usage.prompt_tokens},
          {"completion_tokens", response.usage.completion_tokens}}}}},
  };
  cassette_.append(CassetteEntry{request_key(request), "chat", std::move(payload)});
  return RawCompletion{std::move(response.content), response.usage};
}

ReplayChatBackend::ReplayChatBackend(Cassette& cassette, ReplayMatch match,
                                     std::size_t in_flight_cap)
    : ChatBackend(in_flight_cap), cassette_(cassette), match_(match) {}

RawCompletion ReplayChatBackend::fetch(const ChatRequest& request) {
  const std::string key = request_key(request);
  auto entry = match_ == ReplayMatch::ByKey ? cassette_.find(key) : cassette_.next_chat();
  if (!entry || entry->kind != "chat") {
    throw Error(ErrorCode::CassetteMiss, "no cassette entry for request " + key);
  }
  return completion_from(*entry);
}

RecordingEmbeddingBackend::RecordingEmbeddingBackend(EmbeddingBackend& inner, Cassette& cassette,
                                                     std::size_t batch_size)
    : EmbeddingBackend(inner.model(), batch_size), inner_(inner), cassette_(cassette) {}

std::vector<Vector> RecordingEmbeddingBackend::fetch(std::span<const std::string> batch) {
  auto vectors = inner_.embed(batch);
  for (std::size_t i = 0; i < batch.size(); ++i) {
    Json payload = {{"model", model()}, {"text", batch[i]}, {"vector", vectors[i]}};
    cassette_.append(CassetteEntry{embedding_key(model(), batch[i]), "embedding", std::move(payload)});
  }
  return vectors;
}

ReplayEmbeddingBackend::ReplayEmbeddingBackend(std::string model, Cassette& cassette,
                                               std::size_t batch_size)
    : EmbeddingBackend(std::move(model), batch_size), cassette_(cassette) {}

std::vector<Vector> ReplayEmbeddingBackend::fetch(std::span<const std::string> batch) {
  std::vector<Vector> out;
  out.reserve(batch.size());
  for (const auto& text : batch) {
    const std::string key = embedding_key(model(), text);
    auto entry = cassette_.find(key);
    if (!entry || entry->kind != "embedding") {
      throw Error(ErrorCode::CassetteMiss, "no cassette embedding for text hash " + key);
    }
    out.push_back(entry->payload.at("vector").get<Vector>());
  }
  return out;
}

}  // namespace ontoekg::llm

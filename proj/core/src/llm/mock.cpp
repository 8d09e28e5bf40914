#include "ontoekg/llm/mock.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "ontoekg/model.hpp"

namespace ontoekg::llm {

// ---------------------------------------------------------------------------
// ScriptedChatBackend

ScriptedChatBackend::ScriptedChatBackend(std::vector<std::string> replies) : ChatBackend(1) {
  for (auto& r : replies) replies_.push_back({std::move(r), std::nullopt});
}

void ScriptedChatBackend::push(std::string content) {
  std::lock_guard lock(mutex_);
  replies_.push_back({std::move(content), std::nullopt});
}

void ScriptedChatBackend::push_error(ErrorCode code, std::string message) {
  std::lock_guard lock(mutex_);
  replies_.push_back({std::move(message), code});
}

std::vector<ChatRequest> ScriptedChatBackend::requests() const {
  std::lock_guard lock(mutex_);
  return requests_;
}

std::size_t ScriptedChatBackend::remaining() const {
  std::lock_guard lock(mutex_);
  return replies_.size();
}

RawCompletion ScriptedChatBackend::fetch(const ChatRequest& request) {
  std::lock_guard lock(mutex_);
  requests_.push_back(request);
  if (replies_.empty()) throw Error(ErrorCode::BackendError, "scripted backend has no replies left");
  Reply reply = std::move(replies_.front());
  replies_.pop_front();
  if (reply.error) throw Error(*reply.error, reply.content);
  return RawCompletion{std::move(reply.content), {}};
}

// ---------------------------------------------------------------------------
// MockChatBackend

namespace {

bool is_upper(char c) { return std::isupper(static_cast<unsigned char>(c)) != 0; }
bool is_lower(char c) { return std::islower(static_cast<unsigned char>(c)) != 0; }
bool is_alnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }

bool capitalised_term(const std::string& word) {
  static const std::set<std::string> kStop = {"The", "This", "That", "These", "Those", "Each",
                                              "Every", "All", "Any", "When", "Where", "Such"};
  return word.size() >= 4 && is_upper(word[0]) &&
         std::any_of(word.begin() + 1, word.end(), is_lower) && !kStop.contains(word);
}

Json heuristic_extraction(const std::string& text) {
  std::vector<std::string> order;
  std::set<std::string> seen;
  bool sentence_start = true;
  std::vector<std::string> run;

  auto flush = [&]() {
    if (!run.empty()) {
      std::string label;
      for (const auto& w : run) label += (label.empty() ? "" : " ") + w;
      if (seen.insert(label_key(label)).second) order.push_back(label);
    }
    run.clear();
  };

  std::size_t i = 0;
  while (i < text.size()) {
    if (!is_alnum(text[i])) {
      if (text[i] == '.' || text[i] == '\n' || text[i] == ':' || text[i] == '?' || text[i] == '!') {
        flush();
        sentence_start = true;
      } else if (text[i] != ' ' && text[i] != '-') {
        flush();
      }
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && is_alnum(text[j])) ++j;
    std::string word = text.substr(i, j - i);
    if (!sentence_start && capitalised_term(word)) {
      run.push_back(word);
    } else {
      flush();
    }
    sentence_start = false;
    i = j;
  }
  flush();

  Json classes = Json::array();
  for (std::size_t k = 0; k < order.size() && k < 15; ++k) {
    classes.push_back({{"label", order[k]},
                       {"description", "A kind of entity referred to as " + order[k] + "."}});
  }
  return Json{{"classes", classes}, {"properties", Json::array()}};
}

}  // namespace

MockChatBackend::MockChatBackend(Json answer_sheet, std::size_t in_flight_cap)
    : ChatBackend(in_flight_cap), sheet_(std::move(answer_sheet)) {}

RawCompletion MockChatBackend::fetch(const ChatRequest& request) {
  const Json& ctx = request.context;
  const std::string stage = ctx.is_object() ? ctx.value("stage", "") : "";

  if (stage == "extraction") {
    const std::string doc = ctx.value("document", "");
    const auto segment = ctx.value("segment", 0);
    if (sheet_.contains("extraction") && sheet_["extraction"].contains(doc)) {
      const Json empty = {{"classes", Json::array()}, {"properties", Json::array()}};
      return {(segment == 0 ? sheet_["extraction"][doc] : empty).dump(), {}};
    }
    return {heuristic_extraction(ctx.value("text", request.user_content)).dump(), {}};
  }

  if (stage == "entailment") {
    const std::string sub = ctx.value("sub", "");
    const std::string sup = ctx.value("sup", "");
    if (sheet_.contains("entailment")) {
      for (const auto& h : sheet_["entailment"].value("holds", Json::array())) {
        if (label_key(h.value("sub", "")) == label_key(sub) &&
            label_key(h.value("sup", "")) == label_key(sup)) {
          return {Json{{"holds", true}, {"rationale", h.value("rationale", "Listed as holding.")}}.dump(),
                  {}};
        }
      }
      return {Json{{"holds", false},
                   {"rationale", "Not every " + sub + " is necessarily a " + sup + "."}}
                  .dump(),
              {}};
    }
    const std::string a = label_key(sub), b = label_key(sup);
    const bool holds = a.size() > b.size() && !b.empty() && a.ends_with(b);
    const std::string why = holds ? sub + " is named as a specialisation of its head term " + sup + "."
                                  : sup + " does not generalise " + sub + " by name.";
    return {Json{{"holds", holds}, {"rationale", why}}.dump(), {}};
  }

  throw Error(ErrorCode::BackendError, "mock backend cannot answer a request without a stage");
}

// ---------------------------------------------------------------------------
// Embedders

namespace {

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace

HashEmbedder::HashEmbedder(std::size_t dimension, std::size_t batch_size)
    : EmbeddingBackend("hash-trigram-" + std::to_string(dimension), batch_size),
      dimension_(dimension == 0 ? 1 : dimension) {}

std::vector<Vector> HashEmbedder::fetch(std::span<const std::string> batch) {
  std::vector<Vector> out;
  out.reserve(batch.size());
  for (const auto& text : batch) {
    std::string norm = label_key(text);
    if (norm.empty()) norm = text;
    const std::string padded = "^" + norm + "$";
    Vector v(dimension_, 0.0);
    auto add = [&](std::string_view gram) {
      const std::uint64_t h = fnv1a(gram);
      v[h % dimension_] += (h >> 63) != 0 ? 1.0 : -1.0;
    };
    if (padded.size() < 3) {
      add(padded);
    } else {
      for (std::size_t i = 0; i + 3 <= padded.size(); ++i) add(std::string_view(padded).substr(i, 3));
    }
    // All grams may cancel; fall back to the whole string's bucket.
    if (std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; })) add(padded);
    out.push_back(std::move(v));
  }
  return out;
}

IdentityEmbedder::IdentityEmbedder(std::size_t capacity)
    : EmbeddingBackend("identity", 64), capacity_(capacity) {}

std::vector<Vector> IdentityEmbedder::fetch(std::span<const std::string> batch) {
  std::lock_guard lock(mutex_);
  std::vector<Vector> out;
  for (const auto& text : batch) {
    auto [it, inserted] = slots_.emplace(text, slots_.size());
    if (it->second >= capacity_) {
      throw Error(ErrorCode::EmbeddingFailure, "identity embedder capacity exhausted");
    }
    Vector v(capacity_, 0.0);
    v[it->second] = 1.0;
    out.push_back(std::move(v));
  }
  return out;
}

FixedEmbedder::FixedEmbedder(std::map<std::string, Vector> table)
    : EmbeddingBackend("fixed", 64), table_(std::move(table)) {}

std::vector<Vector> FixedEmbedder::fetch(std::span<const std::string> batch) {
  std::vector<Vector> out;
  for (const auto& text : batch) {
    auto it = table_.find(text);
    if (it == table_.end()) throw Error(ErrorCode::EmbeddingFailure, "no vector for '" + text + "'");
    out.push_back(it->second);
  }
  return out;
}

}  // namespace ontoekg::llm

#include "ontoekg/model.hpp"

#include <algorithm>
#include <cctype>

namespace ontoekg {

namespace {

bool is_alnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }
bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::vector<std::string> words(std::string_view label) {
  std::vector<std::string> out;
  std::string current;
  for (char c : label) {
    if (is_alnum(c)) {
      current.push_back(c);
    } else if (!current.empty()) {
      out.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) out.push_back(std::move(current));
  return out;
}

char upper(char c) { return static_cast<char>(std::toupper(static_cast<unsigned char>(c))); }
char lower(char c) { return static_cast<char>(std::tolower(static_cast<unsigned char>(c))); }

Iri mint(const Iri& base, const Label& label, const std::set<Iri>& taken,
         std::string local) {
  if (local.empty()) {
    throw Error(ErrorCode::InvalidLabel,
                "label has no alphanumeric characters: '" + label.text() + "'");
  }
  Iri candidate(base.value() + local);
  for (int suffix = 2; taken.contains(candidate); ++suffix) {
    candidate = Iri(base.value() + local + std::to_string(suffix));
  }
  return candidate;
}

}  // namespace

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "INVALID_ARGUMENT";
    case ErrorCode::InvalidLabel: return "INVALID_LABEL";
    case ErrorCode::InvalidIri: return "INVALID_IRI";
    case ErrorCode::MissingPath: return "MISSING_PATH";
    case ErrorCode::ConfigError: return "CONFIG_ERROR";
    case ErrorCode::SchemaFailure: return "SCHEMA_FAILURE";
    case ErrorCode::BackendError: return "BACKEND_ERROR";
    case ErrorCode::AuthError: return "AUTH_ERROR";
    case ErrorCode::RateLimited: return "RATE_LIMITED";
    case ErrorCode::CassetteMiss: return "CASSETTE_MISS";
    case ErrorCode::NetworkForbidden: return "NETWORK_FORBIDDEN";
    case ErrorCode::EmbeddingFailure: return "EMBEDDING_FAILURE";
    case ErrorCode::SyntaxError: return "SYNTAX_ERROR";
    case ErrorCode::UnresolvedReference: return "UNRESOLVED_REFERENCE";
    case ErrorCode::ValidationFailure: return "VALIDATION_FAILURE";
  }
  return "UNKNOWN";
}

Label::Label(std::string_view text) : text_(trim(text)) {
  if (std::none_of(text_.begin(), text_.end(), is_alnum)) {
    throw Error(ErrorCode::InvalidLabel,
                "label must contain an alphanumeric character: '" +
                    std::string(text) + "'");
  }
}

bool is_valid_iri(std::string_view value) noexcept {
  auto colon = value.find(':');
  if (colon == std::string_view::npos || colon == 0) return false;
  if (!std::isalpha(static_cast<unsigned char>(value[0]))) return false;
  for (std::size_t i = 1; i < colon; ++i) {
    char c = value[i];
    if (!is_alnum(c) && c != '+' && c != '-' && c != '.') return false;
  }
  for (char c : value) {
    if (static_cast<unsigned char>(c) <= 0x20) return false;
    switch (c) {
      case '<': case '>': case '"': case '{': case '}':
      case '|': case '^': case '`': case '\\':
        return false;
      default:
        break;
    }
  }
  return true;
}

Iri::Iri(std::string_view value) : value_(value) {
  if (!is_valid_iri(value_)) {
    throw Error(ErrorCode::InvalidIri, "not an absolute IRI: '" + value_ + "'");
  }
}

std::string_view local_name(const Iri& iri) noexcept {
  std::string_view v = iri.value();
  auto pos = v.find_last_of("#/");
  if (pos == std::string_view::npos || pos + 1 == v.size()) return v;
  return v.substr(pos + 1);
}

std::string label_key(std::string_view text) {
  std::string key;
  key.reserve(text.size());
  for (char c : text) {
    if (is_alnum(c)) key.push_back(lower(c));
  }
  return key;
}

std::string pascal_case(std::string_view label) {
  std::string out;
  for (auto& w : words(label)) {
    w[0] = upper(w[0]);
    out += w;
  }
  return out;
}

std::string camel_case(std::string_view label) {
  std::string out;
  bool first = true;
  for (auto& w : words(label)) {
    w[0] = first ? lower(w[0]) : upper(w[0]);
    first = false;
    out += w;
  }
  return out;
}

Iri mint_class_iri(const Iri& base, const Label& label,
                   const std::set<Iri>& taken) {
  return mint(base, label, taken, pascal_case(label.text()));
}

Iri mint_property_iri(const Iri& base, const Label& label,
                      const std::set<Iri>& taken) {
  return mint(base, label, taken, camel_case(label.text()));
}

const OntologyClass* Ontology::find_class(const Iri& iri) const {
  auto it = std::find_if(classes.begin(), classes.end(),
                         [&](const OntologyClass& c) { return c.iri == iri; });
  return it == classes.end() ? nullptr : &*it;
}

const OntologyClass* Ontology::find_class_by_label(std::string_view label) const {
  const std::string key = label_key(label);
  auto it = std::find_if(classes.begin(), classes.end(), [&](const OntologyClass& c) {
    return label_key(c.label.text()) == key;
  });
  return it == classes.end() ? nullptr : &*it;
}

const OntologyProperty* Ontology::find_property(const Iri& iri) const {
  auto it = std::find_if(properties.begin(), properties.end(),
                         [&](const OntologyProperty& p) { return p.iri == iri; });
  return it == properties.end() ? nullptr : &*it;
}

std::set<Iri> Ontology::class_iris() const {
  std::set<Iri> out;
  for (const auto& c : classes) out.insert(c.iri);
  return out;
}

std::set<Iri> Ontology::taken_iris() const {
  std::set<Iri> out = class_iris();
  for (const auto& p : properties) out.insert(p.iri);
  return out;
}

Iri Ontology::add_class(const Label& label, std::string description,
                               bool is_reified_datatype) {
  Iri iri = mint_class_iri(base_iri, label, taken_iris());
  classes.push_back(
      OntologyClass{std::move(iri), label, std::move(description), is_reified_datatype});
  return classes.back().iri;
}

Iri Ontology::add_property(const Label& label, std::string description,
                                  Iri domain, Iri range) {
  Iri iri = mint_property_iri(base_iri, label, taken_iris());
  properties.push_back(OntologyProperty{std::move(iri), label, std::move(description),
                                        std::move(domain), std::move(range)});
  return properties.back().iri;
}

}  // namespace ontoekg

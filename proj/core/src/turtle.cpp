#include "ontoekg/turtle.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <set>

namespace ontoekg {

namespace {

// ---------------------------------------------------------------------------
// Emission

struct PrefixBinding {
  std::string_view name;
  std::string ns;
};

bool is_safe_local(std::string_view local) {
  if (local.empty()) return false;
  return std::all_of(local.begin(), local.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
  });
}

std::string render_iri(const Iri& iri, const std::vector<PrefixBinding>& prefixes) {
  const std::string& v = iri.value();
  // Longest namespace wins so the base prefix can sit under a standard one.
  const PrefixBinding* best = nullptr;
  for (const auto& p : prefixes) {
    if (v.size() > p.ns.size() && v.starts_with(p.ns) &&
        is_safe_local(std::string_view(v).substr(p.ns.size())) &&
        (best == nullptr || p.ns.size() > best->ns.size())) {
      best = &p;
    }
  }
  if (best != nullptr) {
    return std::string(best->name) + ":" + v.substr(best->ns.size());
  }
  return "<" + v + ">";
}

std::string escape_literal(std::string_view s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '"': out += "\\\""; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          static constexpr char kHex[] = "0123456789ABCDEF";
          out += "\\u00";
          out.push_back(kHex[(c >> 4) & 0xF]);
          out.push_back(kHex[c & 0xF]);
        } else {
          out.push_back(c);
        }
    }
  }
  return out;
}

std::string render_term(const Term& t, const std::vector<PrefixBinding>& prefixes) {
  if (t.is_iri()) return render_iri(t.iri(), prefixes);
  const auto& lit = t.as_literal();
  std::string out = "\"" + escape_literal(lit.lexical) + "\"";
  if (lit.datatype) out += "^^" + render_iri(*lit.datatype, prefixes);
  return out;
}

// ---------------------------------------------------------------------------
// Parsing

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

bool is_pn_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_' || c == '-' ||
         c == '.' || static_cast<unsigned char>(c) >= 0x80;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  std::vector<Triple> run() {
    skip_ws();
    while (!at_end()) {
      statement();
      skip_ws();
    }
    return std::move(triples_);
  }

  std::optional<Iri> base_namespace() const {
    if (auto it = prefixes_.find(""); it != prefixes_.end()) return Iri(it->second);
    return base_;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { fail_at(line_, col_, what); }

  [[noreturn]] static void fail_at(std::size_t line, std::size_t col, const std::string& what) {
    throw TurtleSyntaxError(line, col, what);
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }

  char advance() {
    char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skip_ws() {
    while (!at_end()) {
      char c = peek();
      if (c == '#') {
        while (!at_end() && peek() != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  void expect(char c) {
    skip_ws();
    if (peek() != c) {
      fail(std::string("expected '") + c + "'" +
           (at_end() ? " before end of input" : std::string(" but found '") + peek() + "'"));
    }
    advance();
  }

  bool keyword(std::string_view word, bool case_insensitive) {
    if (text_.size() - pos_ < word.size()) return false;
    for (std::size_t i = 0; i < word.size(); ++i) {
      char a = text_[pos_ + i];
      char b = word[i];
      if (case_insensitive) {
        a = static_cast<char>(std::tolower(static_cast<unsigned char>(a)));
        b = static_cast<char>(std::tolower(static_cast<unsigned char>(b)));
      }
      if (a != b) return false;
    }
    char next = pos_ + word.size() < text_.size() ? text_[pos_ + word.size()] : ' ';
    if (is_pn_char(next) || next == ':') return false;
    for (std::size_t i = 0; i < word.size(); ++i) advance();
    return true;
  }

  void statement() {
    if (peek() == '@') {
      if (keyword("@prefix", false)) {
        prefix_decl();
        expect('.');
        return;
      }
      if (keyword("@base", false)) {
        base_decl();
        expect('.');
        return;
      }
      fail("unknown directive");
    }
    if (keyword("PREFIX", true)) {
      prefix_decl();
      return;
    }
    if (keyword("BASE", true)) {
      base_decl();
      return;
    }
    triples();
    expect('.');
  }

  void prefix_decl() {
    skip_ws();
    std::string name;
    while (!at_end() && peek() != ':') {
      if (!is_pn_char(peek())) fail("invalid prefix name");
      name.push_back(advance());
    }
    if (at_end()) fail("expected ':' in prefix declaration");
    advance();
    skip_ws();
    if (peek() != '<') fail("expected IRI in prefix declaration");
    prefixes_[name] = iri_ref();
  }

  void base_decl() {
    skip_ws();
    if (peek() != '<') fail("expected IRI in base declaration");
    base_ = make_iri(iri_ref(), line_, col_);
  }

  Iri make_iri(const std::string& raw, std::size_t line, std::size_t col) const {
    std::string value = raw;
    if (!is_valid_iri(value) && base_) value = base_->value() + raw;
    if (!is_valid_iri(value)) fail_at(line, col, "not an absolute IRI: <" + raw + ">");
    return Iri(value);
  }

  std::string iri_ref() {
    const std::size_t line = line_, col = col_;
    advance();  // '<'
    std::string out;
    while (true) {
      if (at_end() || peek() == '\n') fail_at(line, col, "unterminated IRI");
      char c = advance();
      if (c == '>') break;
      if (c == '\\') {
        out += unicode_escape();
        continue;
      }
      if (static_cast<unsigned char>(c) <= 0x20) fail_at(line, col, "whitespace inside IRI");
      out.push_back(c);
    }
    return out;
  }

  std::string unicode_escape() {
    char kind = at_end() ? '\0' : advance();
    std::size_t digits = kind == 'u' ? 4 : kind == 'U' ? 8 : 0;
    if (digits == 0) fail("invalid escape in IRI");
    char32_t cp = 0;
    for (std::size_t i = 0; i < digits; ++i) {
      if (!std::isxdigit(static_cast<unsigned char>(peek()))) fail("invalid unicode escape");
      cp = cp * 16 + static_cast<char32_t>(std::stoi(std::string(1, advance()), nullptr, 16));
    }
    std::string out;
    append_utf8(out, cp);
    return out;
  }

  Iri iri() {
    skip_ws();
    const std::size_t line = line_, col = col_;
    if (peek() == '<') return make_iri(iri_ref(), line, col);
    if (peek() == '[' || peek() == '(' || (peek() == '_' && peek(1) == ':')) {
      fail("blank nodes and collections are not supported");
    }
    std::string prefix;
    while (!at_end() && peek() != ':' && is_pn_char(peek())) prefix.push_back(advance());
    if (peek() != ':') fail_at(line, col, "expected IRI or prefixed name");
    advance();
    std::string local;
    while (!at_end()) {
      char c = peek();
      if (c == '\\' && pos_ + 1 < text_.size()) {
        advance();
        local.push_back(advance());
      } else if (is_pn_char(c) || c == ':' || c == '%') {
        // A trailing '.' ends the statement rather than the name.
        if (c == '.' && !(is_pn_char(peek(1)) || peek(1) == ':')) break;
        local.push_back(advance());
      } else {
        break;
      }
    }
    auto it = prefixes_.find(prefix);
    if (it == prefixes_.end()) fail_at(line, col, "undeclared prefix '" + prefix + ":'");
    return make_iri(it->second + local, line, col);
  }

  Iri verb() {
    skip_ws();
    if (peek() == 'a' && !(is_pn_char(peek(1)) || peek(1) == ':')) {
      advance();
      return vocab::rdf_type();
    }
    return iri();
  }

  std::string quoted() {
    const std::size_t line = line_, col = col_;
    const char quote = advance();
    bool long_form = peek() == quote && peek(1) == quote;
    if (long_form) {
      advance();
      advance();
    }
    std::string out;
    while (true) {
      if (at_end()) fail_at(line, col, "unterminated string literal");
      char c = peek();
      if (long_form) {
        if (c == quote && peek(1) == quote && peek(2) == quote) {
          advance(); advance(); advance();
          break;
        }
      } else {
        if (c == quote) {
          advance();
          break;
        }
        if (c == '\n' || c == '\r') fail_at(line, col, "unterminated string literal");
      }
      advance();
      if (c != '\\') {
        out.push_back(c);
        continue;
      }
      if (at_end()) fail_at(line, col, "unterminated string literal");
      char e = peek();
      switch (e) {
        case 't': advance(); out.push_back('\t'); break;
        case 'b': advance(); out.push_back('\b'); break;
        case 'n': advance(); out.push_back('\n'); break;
        case 'r': advance(); out.push_back('\r'); break;
        case 'f': advance(); out.push_back('\f'); break;
        case '"': advance(); out.push_back('"'); break;
        case '\'': advance(); out.push_back('\''); break;
        case '\\': advance(); out.push_back('\\'); break;
        case 'u': case 'U': out += unicode_escape(); break;
        default: fail("invalid escape sequence in string literal");
      }
    }
    return out;
  }

  Term literal() {
    std::string lexical = quoted();
    if (peek() == '@') {
      advance();
      std::string tag;
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '-')) {
        tag.push_back(advance());
      }
      if (tag.empty()) fail("empty language tag");
      // Language tags are accepted and dropped; labels are single-language.
      return Term::literal(std::move(lexical));
    }
    if (peek() == '^' && peek(1) == '^') {
      advance();
      advance();
      return Term(Literal{std::move(lexical), iri()});
    }
    return Term::literal(std::move(lexical));
  }

  Term numeric() {
    std::string lexical;
    if (peek() == '+' || peek() == '-') lexical.push_back(advance());
    bool decimal = false, exponent = false;
    while (!at_end()) {
      char c = peek();
      if (std::isdigit(static_cast<unsigned char>(c))) {
        lexical.push_back(advance());
      } else if (c == '.' && !decimal && !exponent &&
                 std::isdigit(static_cast<unsigned char>(peek(1)))) {
        decimal = true;
        lexical.push_back(advance());
      } else if ((c == 'e' || c == 'E') && !exponent) {
        exponent = true;
        lexical.push_back(advance());
        if (peek() == '+' || peek() == '-') lexical.push_back(advance());
      } else {
        break;
      }
    }
    if (lexical.empty() || lexical == "+" || lexical == "-") fail("malformed numeric literal");
    std::string_view type = exponent ? "double" : decimal ? "decimal" : "integer";
    return Term(Literal{std::move(lexical), Iri(std::string(vocab::kXsd) + std::string(type))});
  }

  Term object() {
    skip_ws();
    char c = peek();
    if (c == '"' || c == '\'') return literal();
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '+' || c == '-' ||
        (c == '.' && std::isdigit(static_cast<unsigned char>(peek(1))))) {
      return numeric();
    }
    for (std::string_view word : {"true", "false"}) {
      if (keyword(word, false)) {
        return Term(Literal{std::string(word), Iri(std::string(vocab::kXsd) + "boolean")});
      }
    }
    return iri();
  }

  void triples() {
    Iri subject = iri();
    while (true) {
      Iri predicate = verb();
      while (true) {
        triples_.push_back({subject, predicate, object()});
        skip_ws();
        if (peek() != ',') break;
        advance();
      }
      skip_ws();
      if (peek() != ';') break;
      while (peek() == ';') {
        advance();
        skip_ws();
      }
      if (peek() == '.') break;
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
  std::map<std::string, std::string> prefixes_;
  std::optional<Iri> base_;
  std::vector<Triple> triples_;
};

// ---------------------------------------------------------------------------
// Ontology reconstruction

struct SubjectIndex {
  std::map<Iri, std::map<Iri, std::vector<Term>>> by_subject;

  explicit SubjectIndex(const std::vector<Triple>& triples) {
    for (const auto& t : triples) by_subject[t.subject][t.predicate].push_back(t.object);
  }

  const std::vector<Term>* values(const Iri& s, const Iri& p) const {
    auto it = by_subject.find(s);
    if (it == by_subject.end()) return nullptr;
    auto jt = it->second.find(p);
    return jt == it->second.end() ? nullptr : &jt->second;
  }

  std::optional<std::string> first_literal(const Iri& s, const Iri& p) const {
    if (const auto* vs = values(s, p)) {
      for (const auto& v : *vs) {
        if (v.is_literal()) return v.as_literal().lexical;
      }
    }
    return std::nullopt;
  }

  std::vector<Iri> iri_values(const Iri& s, const Iri& p) const {
    std::vector<Iri> out;
    if (const auto* vs = values(s, p)) {
      for (const auto& v : *vs) {
        if (v.is_iri()) out.push_back(v.iri());
      }
    }
    return out;
  }
};

std::optional<Label> label_for(const SubjectIndex& index, const Iri& iri) {
  if (auto text = index.first_literal(iri, vocab::rdfs_label())) {
    try {
      return Label(*text);
    } catch (const Error&) {
    }
  }
  try {
    return Label(local_name(iri));
  } catch (const Error&) {
    return std::nullopt;
  }
}

}  // namespace

TurtleSyntaxError::TurtleSyntaxError(std::size_t line, std::size_t column,
                                     const std::string& what)
    : Error(ErrorCode::SyntaxError,
            "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

std::string emit_turtle(std::vector<Triple> triples, const Iri& base) {
  std::sort(triples.begin(), triples.end());
  triples.erase(std::unique(triples.begin(), triples.end()), triples.end());

  const std::vector<PrefixBinding> prefixes = {
      {"rdf", std::string(vocab::kRdf)},
      {"rdfs", std::string(vocab::kRdfs)},
      {"owl", std::string(vocab::kOwl)},
      {"", base.value()},
  };

  std::string out;
  for (const auto& p : prefixes) {
    out += "@prefix " + std::string(p.name) + ": <" + p.ns + "> .\n";
  }

  for (std::size_t i = 0; i < triples.size();) {
    const Iri& subject = triples[i].subject;
    out += "\n" + render_iri(subject, prefixes);
    bool first = true;
    for (; i < triples.size() && triples[i].subject == subject; ++i) {
      const auto& t = triples[i];
      out += first ? " " : " ;\n    ";
      first = false;
      out += t.predicate == vocab::rdf_type() ? "a" : render_iri(t.predicate, prefixes);
      out += " " + render_term(t.object, prefixes);
    }
    out += " .\n";
  }
  return out;
}

std::vector<Triple> parse_turtle_triples(std::string_view text, std::optional<Iri>* base_out) {
  Parser parser(text);
  auto triples = parser.run();
  std::sort(triples.begin(), triples.end());
  triples.erase(std::unique(triples.begin(), triples.end()), triples.end());
  if (base_out != nullptr) *base_out = parser.base_namespace();
  return triples;
}

ParsedOntology parse_turtle(std::string_view text, ParseMode mode,
                            std::optional<Iri> fallback_base) {
  std::optional<Iri> declared_base;
  auto triples = parse_turtle_triples(text, &declared_base);
  Iri base = declared_base ? *declared_base
                           : fallback_base ? *fallback_base : Iri(kDefaultBaseIri);

  ParsedOntology result{Ontology(base), std::move(triples), {}};
  Ontology& o = result.ontology;
  const SubjectIndex index(result.triples);

  std::set<Iri> class_iris, property_iris;
  for (const auto& t : result.triples) {
    if (t.predicate != vocab::rdf_type() || !t.object.is_iri()) continue;
    if (t.object.iri() == vocab::owl_class()) class_iris.insert(t.subject);
    if (t.object.iri() == vocab::owl_object_property()) property_iris.insert(t.subject);
  }

  auto warn = [&](ErrorCode code, const std::string& message) {
    if (mode == ParseMode::Strict) throw Error(code, message);
    result.warnings.push_back({code, message});
  };

  for (const auto& iri : class_iris) {
    auto label = label_for(index, iri);
    if (!label) {
      warn(ErrorCode::InvalidLabel, "class " + iri.value() + " has no usable label");
      continue;
    }
    o.classes.push_back(OntologyClass{
        iri, *label, index.first_literal(iri, vocab::rdfs_comment()).value_or(""), false});
  }

  // Placeholders are appended after the declared classes so that declared
  // classes keep sorted order.
  auto ensure_class = [&](const Iri& iri, const std::string& context) -> bool {
    if (o.has_class(iri)) return true;
    warn(ErrorCode::UnresolvedReference,
         context + " refers to undeclared class " + iri.value() + "; placeholder added");
    auto label = label_for(index, iri);
    if (!label) return false;
    o.classes.push_back(OntologyClass{iri, *label, "", false});
    return true;
  };

  std::vector<SubclassEdge> edges;
  for (const auto& t : result.triples) {
    if (t.predicate != vocab::rdfs_sub_class_of() || !t.object.is_iri()) continue;
    if (t.object.iri().value() == std::string(vocab::kOwl) + "Thing") continue;
    edges.push_back({t.subject, t.object.iri()});
  }

  for (const auto& iri : property_iris) {
    auto label = label_for(index, iri);
    auto domains = index.iri_values(iri, vocab::rdfs_domain());
    auto ranges = index.iri_values(iri, vocab::rdfs_range());
    if (!label) {
      warn(ErrorCode::InvalidLabel, "property " + iri.value() + " has no usable label");
      continue;
    }
    if (domains.empty() || ranges.empty()) {
      warn(ErrorCode::UnresolvedReference,
           "property " + iri.value() + " lacks a domain or range; dropped");
      continue;
    }
    if (domains.size() > 1 || ranges.size() > 1) {
      warn(ErrorCode::UnresolvedReference,
           "property " + iri.value() + " has several domains or ranges; keeping the first");
    }
    if (!ensure_class(domains.front(), "domain of " + iri.value()) ||
        !ensure_class(ranges.front(), "range of " + iri.value())) {
      continue;
    }
    o.properties.push_back(OntologyProperty{
        iri, *label, index.first_literal(iri, vocab::rdfs_comment()).value_or(""),
        domains.front(), ranges.front()});
  }

  for (const auto& e : edges) {
    if (ensure_class(e.sub, "subclass edge") && ensure_class(e.sup, "subclass edge")) {
      o.hierarchy.push_back(e);
    }
  }
  return result;
}

}  // namespace ontoekg

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ontoekg/rdf.hpp"

namespace ontoekg {

/// Deterministic Turtle text. Prefix block is always rdf, rdfs, owl, then
/// the empty prefix bound to `base`; subjects appear in sorted order with
/// their predicates sorted. Equal input gives byte-identical output.
std::string emit_turtle(std::vector<Triple> triples, const Iri& base);

/// Raised for malformed Turtle. Line and column are 1-based.
class TurtleSyntaxError : public Error {
 public:
  TurtleSyntaxError(std::size_t line, std::size_t column, const std::string& what);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

enum class ParseMode { Lenient, Strict };

struct ParseWarning {
  ErrorCode code;
  std::string message;
};

struct ParsedOntology {
  Ontology ontology;
  /// Every triple in the document, including annotations the ontology
  /// model ignores. Sorted and deduplicated.
  std::vector<Triple> triples;
  std::vector<ParseWarning> warnings;
};

/// Reads the Turtle subset this library emits: @prefix/@base (and the
/// SPARQL-style forms), IRIs, prefixed names, `a`, string literals with
/// language tags or datatypes, numeric and boolean literals, and `;`/`,`
/// lists. Blank nodes and collections are rejected.
///
/// Undeclared classes referenced as a domain, range or subclass endpoint
/// raise UNRESOLVED_REFERENCE in strict mode; in lenient mode a placeholder
/// class is added and a warning recorded.
///
/// `fallback_base` is used as the ontology base when the document binds
/// neither the empty prefix nor @base.
ParsedOntology parse_turtle(std::string_view text, ParseMode mode = ParseMode::Lenient,
                            std::optional<Iri> fallback_base = std::nullopt);

/// Triple-level reader without ontology reconstruction.
std::vector<Triple> parse_turtle_triples(std::string_view text,
                                         std::optional<Iri>* base_out = nullptr);

}  // namespace ontoekg

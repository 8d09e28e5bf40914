#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ontoekg/model.hpp"

namespace ontoekg {

namespace vocab {
inline constexpr std::string_view kRdf = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view kRdfs = "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr std::string_view kOwl = "http://www.w3.org/2002/07/owl#";
inline constexpr std::string_view kXsd = "http://www.w3.org/2001/XMLSchema#";

const Iri& rdf_type();
const Iri& rdfs_label();
const Iri& rdfs_comment();
const Iri& rdfs_sub_class_of();
const Iri& rdfs_domain();
const Iri& rdfs_range();
const Iri& owl_class();
const Iri& owl_object_property();
}  // namespace vocab

struct Literal {
  std::string lexical;
  std::optional<Iri> datatype;

  friend auto operator<=>(const Literal&, const Literal&) = default;
};

/// Object position of a triple. IRIs order before literals.
class Term {
 public:
  Term(Iri iri) : value_(std::move(iri)) {}  // NOLINT(google-explicit-constructor)
  Term(Literal literal) : value_(std::move(literal)) {}  // NOLINT

  static Term literal(std::string lexical) { return Term(Literal{std::move(lexical), {}}); }

  bool is_iri() const noexcept { return std::holds_alternative<Iri>(value_); }
  bool is_literal() const noexcept { return !is_iri(); }
  const Iri& iri() const { return std::get<Iri>(value_); }
  const Literal& as_literal() const { return std::get<Literal>(value_); }

  friend auto operator<=>(const Term&, const Term&) = default;

 private:
  std::variant<Iri, Literal> value_;
};

struct Triple {
  Iri subject;
  Iri predicate;
  Term object;

  friend auto operator<=>(const Triple&, const Triple&) = default;
};

/// Sorted, duplicate-free triple sequence. Two ontologies with the same
/// content compare equal regardless of construction order.
using CanonicalForm = std::vector<Triple>;

/// Direct mapping from the ontology to triples without any validation.
/// Output is sorted by (subject, predicate, object) and deduplicated.
std::vector<Triple> ontology_triples(const Ontology& o);

enum class TripleValidation { Lenient, Strict };

/// Ontology to RDF triples. In strict mode a CYCLE or DANGLING_REF
/// violation raises ErrorCode::ValidationFailure.
std::vector<Triple> to_triples(const Ontology& o,
                               TripleValidation mode = TripleValidation::Lenient);

CanonicalForm canonicalize(const Ontology& o);

/// Structural triples are the ones scored by evaluation: rdf:type to
/// owl:Class/owl:ObjectProperty, rdfs:subClassOf, rdfs:domain, rdfs:range.
bool is_structural(const Triple& t);

}  // namespace ontoekg

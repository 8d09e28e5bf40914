#pragma once

#include <compare>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ontoekg/error.hpp"

namespace ontoekg {

/// Human-readable term such as "Employee". Always holds at least one ASCII
/// alphanumeric character and no leading/trailing whitespace.
class Label {
 public:
  explicit Label(std::string_view text);

  const std::string& text() const noexcept { return text_; }

  friend auto operator<=>(const Label&, const Label&) = default;

 private:
  std::string text_;
};

inline constexpr std::string_view kDefaultBaseIri = "https://example.org/onto#";

/// Absolute IRI: a scheme followed by ':' and no whitespace or characters
/// that Turtle forbids inside <...>.
class Iri {
 public:
  explicit Iri(std::string_view value);

  const std::string& value() const noexcept { return value_; }

  friend auto operator<=>(const Iri&, const Iri&) = default;

 private:
  std::string value_;
};

bool is_valid_iri(std::string_view value) noexcept;

/// Text after the last '#' or '/', or the whole IRI when neither occurs.
std::string_view local_name(const Iri& iri) noexcept;

/// Matching key for labels: ASCII-lowercased alphanumerics only, so casing,
/// whitespace, underscores and punctuation never distinguish two labels.
std::string label_key(std::string_view text);

struct OntologyClass {
  Iri iri;
  Label label;
  std::string description;
  bool is_reified_datatype = false;
};

struct OntologyProperty {
  Iri iri;
  Label label;
  std::string description;
  Iri domain;
  Iri range;
};

struct SubclassEdge {
  Iri sub;
  Iri sup;

  friend auto operator<=>(const SubclassEdge&, const SubclassEdge&) = default;
};

/// T-Box of one run. The containers keep insertion order; structural
/// invariants (acyclic, reduced, resolved references) are checked by
/// validate_ontology rather than enforced on mutation.
struct Ontology {
  Iri base_iri;
  std::vector<OntologyClass> classes;
  std::vector<OntologyProperty> properties;
  std::vector<SubclassEdge> hierarchy;

  explicit Ontology(Iri base) : base_iri(std::move(base)) {}

  const OntologyClass* find_class(const Iri& iri) const;
  const OntologyClass* find_class_by_label(std::string_view label) const;
  const OntologyProperty* find_property(const Iri& iri) const;
  bool has_class(const Iri& iri) const { return find_class(iri) != nullptr; }

  std::set<Iri> class_iris() const;
  std::set<Iri> taken_iris() const;

  /// Mints an IRI for the label and appends the class. Returns the IRI.
  Iri add_class(const Label& label, std::string description,
                       bool is_reified_datatype = false);

  /// Mints an IRI for the label and appends the property. Returns the IRI.
  Iri add_property(const Label& label, std::string description,
                          Iri domain, Iri range);
};

/// Local-name casing rules applied when minting.
std::string pascal_case(std::string_view label);
std::string camel_case(std::string_view label);

Iri mint_class_iri(const Iri& base, const Label& label,
                   const std::set<Iri>& taken);
Iri mint_property_iri(const Iri& base, const Label& label,
                      const std::set<Iri>& taken);

}  // namespace ontoekg

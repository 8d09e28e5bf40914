#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ontoekg/model.hpp"

namespace ontoekg {

enum class ViolationCode {
  Cycle,
  DanglingRef,
  RedundantEdge,
  AmbiguousProperty,
  SuspectedIndividual,
};

std::string_view to_string(ViolationCode code) noexcept;

struct Violation {
  ViolationCode code;
  std::vector<Iri> iris;
  std::string message;

  /// CYCLE and DANGLING_REF break the ontology's structural invariants;
  /// everything else is reported but never fails a strict run.
  bool is_fatal() const noexcept {
    return code == ViolationCode::Cycle || code == ViolationCode::DanglingRef;
  }
};

/// Checks every structural invariant and the advisory heuristics. Never
/// throws; an empty result means the ontology is clean.
std::vector<Violation> validate_ontology(const Ontology& o);

bool has_fatal(const std::vector<Violation>& violations);

/// Property labels that shadow RDF/RDFS built-in semantics.
bool is_ambiguous_property_label(std::string_view label);

/// Proper-noun heuristic: two or more capitalised words and a description
/// that does not read as a definition of a kind.
bool looks_like_individual(const OntologyClass& c);

}  // namespace ontoekg

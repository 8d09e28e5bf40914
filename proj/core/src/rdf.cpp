#include "ontoekg/rdf.hpp"

#include <algorithm>

#include "ontoekg/validate.hpp"

namespace ontoekg {

namespace vocab {
namespace {
Iri make(std::string_view ns, std::string_view local) {
  return Iri(std::string(ns) + std::string(local));
}
}  // namespace

const Iri& rdf_type() { static const Iri v = make(kRdf, "type"); return v; }
const Iri& rdfs_label() { static const Iri v = make(kRdfs, "label"); return v; }
const Iri& rdfs_comment() { static const Iri v = make(kRdfs, "comment"); return v; }
const Iri& rdfs_sub_class_of() { static const Iri v = make(kRdfs, "subClassOf"); return v; }
const Iri& rdfs_domain() { static const Iri v = make(kRdfs, "domain"); return v; }
const Iri& rdfs_range() { static const Iri v = make(kRdfs, "range"); return v; }
const Iri& owl_class() { static const Iri v = make(kOwl, "Class"); return v; }
const Iri& owl_object_property() { static const Iri v = make(kOwl, "ObjectProperty"); return v; }
}  // namespace vocab

std::vector<Triple> ontology_triples(const Ontology& o) {
  std::vector<Triple> out;
  out.reserve(o.classes.size() * 3 + o.properties.size() * 5 + o.hierarchy.size());

  for (const auto& c : o.classes) {
    out.push_back({c.iri, vocab::rdf_type(), vocab::owl_class()});
    out.push_back({c.iri, vocab::rdfs_label(), Term::literal(c.label.text())});
    if (!c.description.empty()) {
      out.push_back({c.iri, vocab::rdfs_comment(), Term::literal(c.description)});
    }
  }
  for (const auto& e : o.hierarchy) {
    out.push_back({e.sub, vocab::rdfs_sub_class_of(), e.sup});
  }
  for (const auto& p : o.properties) {
    out.push_back({p.iri, vocab::rdf_type(), vocab::owl_object_property()});
    out.push_back({p.iri, vocab::rdfs_label(), Term::literal(p.label.text())});
    out.push_back({p.iri, vocab::rdfs_domain(), p.domain});
    out.push_back({p.iri, vocab::rdfs_range(), p.range});
    if (!p.description.empty()) {
      out.push_back({p.iri, vocab::rdfs_comment(), Term::literal(p.description)});
    }
  }

  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Triple> to_triples(const Ontology& o, TripleValidation mode) {
  if (mode == TripleValidation::Strict) {
    for (const auto& v : validate_ontology(o)) {
      if (v.is_fatal()) {
        throw Error(ErrorCode::ValidationFailure,
                    std::string(to_string(v.code)) + ": " + v.message);
      }
    }
  }
  return ontology_triples(o);
}

CanonicalForm canonicalize(const Ontology& o) { return ontology_triples(o); }

bool is_structural(const Triple& t) {
  if (t.predicate == vocab::rdf_type()) {
    return t.object.is_iri() && (t.object.iri() == vocab::owl_class() ||
                                 t.object.iri() == vocab::owl_object_property());
  }
  return t.predicate == vocab::rdfs_sub_class_of() ||
         t.predicate == vocab::rdfs_domain() || t.predicate == vocab::rdfs_range();
}

}  // namespace ontoekg

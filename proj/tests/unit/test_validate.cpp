#include <gtest/gtest.h>

#include <random>

#include "ontoekg/validate.hpp"
#include "oracles.hpp"

using namespace ontoekg;

namespace {

std::vector<ViolationCode> codes(const std::vector<Violation>& vs) {
  std::vector<ViolationCode> out;
  for (const auto& v : vs) out.push_back(v.code);
  return out;
}

bool has(const std::vector<Violation>& vs, ViolationCode c) {
  return std::any_of(vs.begin(), vs.end(), [&](const Violation& v) { return v.code == c; });
}

}  // namespace

TEST(Validate, EmptyOntologyIsClean) {
  EXPECT_TRUE(validate_ontology(Ontology(Iri(kDefaultBaseIri))).empty());
}

TEST(Validate, MutualSubsumptionIsOneCycle) {
  Ontology o{Iri(kDefaultBaseIri)};
  const Iri policy = o.add_class(Label("Policy"), "");
  const Iri standard = o.add_class(Label("GovernanceStandard"), "");
  o.hierarchy = {{policy, standard}, {standard, policy}};
  const auto vs = validate_ontology(o);
  ASSERT_EQ(codes(vs), std::vector<ViolationCode>{ViolationCode::Cycle});
  EXPECT_EQ(vs[0].iris, (std::vector<Iri>{standard, policy}));
  EXPECT_TRUE(vs[0].is_fatal());
}

TEST(Validate, AmbiguousPropertyLabels) {
  Ontology o{Iri(kDefaultBaseIri)};
  const Iri a = o.add_class(Label("Asset"), "");
  o.add_property(Label("isTypeOf"), "", a, a);
  EXPECT_EQ(codes(validate_ontology(o)), std::vector<ViolationCode>{ViolationCode::AmbiguousProperty});
  for (const auto* l : {"subClassOf", "instance of", "is_a", "IsA"}) {
    EXPECT_TRUE(is_ambiguous_property_label(l)) << l;
  }
  EXPECT_FALSE(is_ambiguous_property_label("isPartOf"));
}

TEST(Validate, DanglingReferences) {
  Ontology o{Iri(kDefaultBaseIri)};
  const Iri a = o.add_class(Label("Asset"), "");
  const Iri ghost("https://example.org/onto#Ghost");
  o.add_property(Label("owns"), "", a, ghost);
  o.hierarchy.push_back({a, ghost});
  const auto vs = validate_ontology(o);
  EXPECT_EQ(std::count_if(vs.begin(), vs.end(),
                          [](const Violation& v) { return v.code == ViolationCode::DanglingRef; }),
            2);
  EXPECT_TRUE(has_fatal(vs));
}

TEST(Validate, RedundantEdge) {
  Ontology o{Iri(kDefaultBaseIri)};
  const Iri a = o.add_class(Label("A"), "");
  const Iri b = o.add_class(Label("B"), "");
  const Iri c = o.add_class(Label("C"), "");
  o.hierarchy = {{a, b}, {b, c}, {a, c}};
  const auto vs = validate_ontology(o);
  ASSERT_EQ(codes(vs), std::vector<ViolationCode>{ViolationCode::RedundantEdge});
  EXPECT_EQ(vs[0].iris, (std::vector<Iri>{a, c}));
  EXPECT_FALSE(has_fatal(vs));
}

TEST(Validate, SuspectedIndividualIsAdvisory) {
  Ontology o{Iri(kDefaultBaseIri)};
  o.add_class(Label("Acme Logistics"), "");
  o.add_class(Label("Data Owner"), "The employee accountable for a data asset.");
  o.add_class(Label("Data Asset"), "A collection of business information.");
  o.add_class(Label("Employee"), "");
  o.add_class(Label("Text"), "", /*is_reified_datatype=*/true);
  const auto vs = validate_ontology(o);
  ASSERT_EQ(codes(vs), std::vector<ViolationCode>{ViolationCode::SuspectedIndividual});
  EXPECT_EQ(local_name(vs[0].iris.at(0)), "AcmeLogistics");
  EXPECT_FALSE(has_fatal(vs));
}

TEST(Validate, NoCycleReportedMeansTopologicalOrderExists) {
  std::mt19937 rng(5);
  for (int round = 0; round < 200; ++round) {
    Ontology o{Iri(kDefaultBaseIri)};
    std::vector<Iri> iris;
    for (int i = 0; i < 8; ++i) iris.push_back(o.add_class(Label("C" + std::to_string(i)), ""));
    std::uniform_int_distribution<int> pick(0, 7);
    for (int k = 0; k < 9; ++k) {
      const int a = pick(rng), b = pick(rng);
      if (a != b) o.hierarchy.push_back({iris[a], iris[b]});
    }
    const bool cycle_reported = has(validate_ontology(o), ViolationCode::Cycle);
    EXPECT_EQ(cycle_reported, !oracle::acyclic(oracle::as_pairs(o.hierarchy)));
  }
}

TEST(Validate, RandomValidOntologiesHaveResolvedReferences) {
  std::mt19937 rng(9);
  for (int round = 0; round < 50; ++round) {
    const Ontology o = oracle::random_ontology(rng, 12);
    const auto members = o.class_iris();
    for (const auto& p : o.properties) {
      EXPECT_TRUE(members.contains(p.domain));
      EXPECT_TRUE(members.contains(p.range));
    }
    EXPECT_FALSE(has(validate_ontology(o), ViolationCode::DanglingRef));
  }
}

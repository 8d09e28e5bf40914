#include <gtest/gtest.h>

#include <random>

#include "ontoekg/model.hpp"
#include "ontoekg/rdf.hpp"
#include "oracles.hpp"

using namespace ontoekg;

namespace {

const Iri kBase{"https://example.org/onto#"};

Iri at(const std::string& local) { return Iri(kBase.value() + local); }

}  // namespace

TEST(Label, TrimsAndRequiresAlphanumeric) {
  EXPECT_EQ(Label("  Employee \n").text(), "Employee");
  EXPECT_THROW(Label("   "), Error);
  EXPECT_THROW(Label("--/--"), Error);
  try {
    Label("!!!");
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidLabel);
  }
}

TEST(Iri, NeedsSchemeAndNoWhitespace) {
  EXPECT_NO_THROW(Iri("http://x.org/a"));
  EXPECT_NO_THROW(Iri("urn:isbn:123"));
  EXPECT_THROW(Iri("no-scheme"), Error);
  EXPECT_THROW(Iri("http://x.org/a b"), Error);
  EXPECT_THROW(Iri("http://x.org/<a>"), Error);
  EXPECT_EQ(local_name(Iri("http://x.org/onto#Apple")), "Apple");
  EXPECT_EQ(local_name(Iri("http://x.org/onto/Apple")), "Apple");
}

TEST(LabelKey, IgnoresCaseSpacingAndPunctuation) {
  EXPECT_EQ(label_key("Data Asset"), "dataasset");
  EXPECT_EQ(label_key("data_asset"), "dataasset");
  EXPECT_EQ(label_key("DATA-ASSET"), "dataasset");
}

TEST(MintClassIri, NormalisesToPascalCase) {
  EXPECT_EQ(mint_class_iri(kBase, Label("data governance policy"), {}), at("DataGovernancePolicy"));
  EXPECT_EQ(mint_class_iri(kBase, Label("Apple"), {}), at("Apple"));
  EXPECT_EQ(mint_class_iri(kBase, Label("e-mail address"), {}), at("EMailAddress"));
}

TEST(MintClassIri, SuffixesOnCollision) {
  EXPECT_EQ(mint_class_iri(kBase, Label("Policy"), {at("Policy")}), at("Policy2"));
  EXPECT_EQ(mint_class_iri(kBase, Label("Policy"), {at("Policy"), at("Policy2")}), at("Policy3"));
  // Smallest free suffix, not one past the largest.
  EXPECT_EQ(mint_class_iri(kBase, Label("Policy"), {at("Policy"), at("Policy3")}), at("Policy2"));
}

TEST(MintPropertyIri, NormalisesToCamelCase) {
  EXPECT_EQ(mint_property_iri(kBase, Label("hasAccessTo"), {}), at("hasAccessTo"));
  EXPECT_EQ(mint_property_iri(kBase, Label("Operates Vehicle"), {}), at("operatesVehicle"));
  EXPECT_EQ(mint_property_iri(kBase, Label("has access to"), {}), at("hasAccessTo"));
  EXPECT_EQ(mint_property_iri(kBase, Label("operates"), {}), at("operates"));
  EXPECT_EQ(mint_property_iri(kBase, Label("operates"), {at("operates")}), at("operates2"));
}

TEST(Mint, IsDeterministic) {
  std::mt19937 rng(7);
  for (int i = 0; i < 200; ++i) {
    const Label l(oracle::random_label(rng));
    EXPECT_EQ(mint_class_iri(kBase, l, {}), mint_class_iri(kBase, l, {}));
    EXPECT_EQ(mint_property_iri(kBase, l, {at("X")}), mint_property_iri(kBase, l, {at("X")}));
  }
}

TEST(Mint, InjectiveOverDistinctLabelsAsTakenSetGrows) {
  std::set<Iri> taken;
  for (const auto* l : {"Policy", "policy", "POLICY", "Data Asset", "data asset", "Apple"}) {
    const Iri iri = mint_class_iri(kBase, Label(l), taken);
    EXPECT_FALSE(taken.contains(iri)) << l;
    taken.insert(iri);
  }
  EXPECT_EQ(taken.size(), 6u);
}

TEST(Ontology, AddClassMintsUniqueIris) {
  Ontology o(kBase);
  const Iri a = o.add_class(Label("Policy"), "first");
  const Iri b = o.add_class(Label("policy"), "second");
  EXPECT_EQ(a, at("Policy"));
  EXPECT_EQ(b, at("Policy2"));
  ASSERT_NE(o.find_class(b), nullptr);
  EXPECT_EQ(o.find_class(b)->description, "second");
  EXPECT_EQ(o.find_class_by_label("Policy")->iri, a);
}

TEST(Canonicalize, IsIdempotentAndDeterministic) {
  std::mt19937 rng(11);
  const Ontology o = oracle::random_ontology(rng, 10);
  EXPECT_EQ(canonicalize(o), canonicalize(o));
  const auto c = canonicalize(o);
  EXPECT_TRUE(std::is_sorted(c.begin(), c.end()));
  EXPECT_EQ(std::adjacent_find(c.begin(), c.end()), c.end());
}

TEST(Canonicalize, InsertionOrderDoesNotMatter) {
  std::mt19937 rng(3);
  for (int round = 0; round < 20; ++round) {
    const Ontology o = oracle::random_ontology(rng, 10);
    Ontology permuted = o;
    std::shuffle(permuted.classes.begin(), permuted.classes.end(), rng);
    std::shuffle(permuted.properties.begin(), permuted.properties.end(), rng);
    std::shuffle(permuted.hierarchy.begin(), permuted.hierarchy.end(), rng);
    EXPECT_EQ(canonicalize(o), canonicalize(permuted));
  }
}

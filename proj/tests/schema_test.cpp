#include <gtest/gtest.h>

#include "lpcheck/schema.hpp"
#include "support.hpp"

using namespace lpcheck;
using namespace lpcheck::testing;

namespace {

std::vector<SchemaId> oracle_classify(const Formula& f, const std::vector<Formula>& patterns) {
  std::vector<SchemaId> out;
  for (std::size_t i = 0; i < patterns.size(); ++i)
    if (!brute_force_matches(patterns[i], f).empty()) out.push_back(static_cast<SchemaId>(i));
  return out;
}

std::vector<Formula> parsed_patterns() {
  std::vector<Formula> out;
  for (const auto& d : reference_patterns()) out.push_back(parse_formula(d.text));
  return out;
}

}  // namespace

TEST(Schema, PatternsAreTheListedAxioms) {
  auto patterns = parsed_patterns();
  ASSERT_EQ(all_schemas().size(), patterns.size());
  for (std::size_t i = 0; i < patterns.size(); ++i) {
    EXPECT_EQ(to_string(all_schemas()[i].id()), reference_patterns()[i].id);
    EXPECT_TRUE(structurally_equal(all_schemas()[i].pattern(), patterns[i])) << reference_patterns()[i].id;
    EXPECT_EQ(schema_from_string(reference_patterns()[i].id), all_schemas()[i].id());
  }
  EXPECT_FALSE(schema_from_string("AX11"));
}

TEST(Schema, MatchExamples) {
  auto ax4 = match_schema(schema(SchemaId::AX4), parse_formula("(p & q) -> p"));
  ASSERT_TRUE(ax4);
  EXPECT_TRUE(structurally_equal(ax4->at('A'), parse_formula("p")));
  EXPECT_TRUE(structurally_equal(ax4->at('B'), parse_formula("q")));

  EXPECT_FALSE(match_schema(schema(SchemaId::AX1), parse_formula("p -> p")));

  auto ax10 = match_schema(schema(SchemaId::AX10), parse_formula("q -> (~q -> p)"));
  ASSERT_TRUE(ax10);
  EXPECT_TRUE(structurally_equal(ax10->at('B'), parse_formula("q")));
  EXPECT_TRUE(structurally_equal(ax10->at('A'), parse_formula("p")));
}

TEST(Schema, InstantiateExamples) {
  MatchAssignment pq{{'A', parse_formula("p")}, {'B', parse_formula("q")}};
  EXPECT_TRUE(structurally_equal(instantiate_schema(schema(SchemaId::AX1), pq), parse_formula("p -> (q -> p)")));
  MatchAssignment pqr{{'A', parse_formula("p")}, {'B', parse_formula("q")}, {'C', parse_formula("r")}};
  EXPECT_TRUE(structurally_equal(instantiate_schema(schema(SchemaId::AX2), pqr),
                                 parse_formula("(p -> q) -> ((p -> (q -> r)) -> (p -> r))")));
  EXPECT_TRUE(
      structurally_equal(instantiate_schema(schema(SchemaId::AX9), {{'A', parse_formula("p")}}), parse_formula("p | ~p")));
  EXPECT_THROW(instantiate_schema(schema(SchemaId::AX2), pq), FormulaError);
}

TEST(Schema, RepeatedMetavariablesUseAlphaEquality) {
  Formula f = parse_formula("u in {x | x in x} -> (q -> u in {y | y in y})");
  EXPECT_TRUE(match_schema(schema(SchemaId::AX1), f));
  EXPECT_FALSE(match_schema(schema(SchemaId::AX1), parse_formula("u in {x | x in x} -> (q -> u in {y | y in u})")));
}

TEST(Schema, ClassifyExamples) {
  EXPECT_EQ(classify_axiom(parse_formula("p -> (q -> p)")), std::vector<SchemaId>{SchemaId::AX1});
  EXPECT_EQ(classify_axiom(parse_formula("(p & (p -> f)) -> f")), std::vector<SchemaId>{SchemaId::Assertion});
  EXPECT_TRUE(classify_axiom(parse_formula("p -> q")).empty());
  // one formula, several schemata
  EXPECT_EQ(classify_axiom(parse_formula("p & p -> p")), (std::vector<SchemaId>{SchemaId::AX4, SchemaId::AX5}));
}

TEST(Schema, InversionOverRandomAssignments) {
  Gen gen(0x5c4e0001);
  for (const Schema& s : all_schemas()) {
    for (int trial = 0; trial < 1000; ++trial) {
      MatchAssignment sigma;
      for (char m : s.metavariables()) sigma.emplace(m, gen.formula(1 + gen.below(12)));
      Formula inst = instantiate_schema(s, sigma);
      auto back = match_schema(s, inst);
      ASSERT_TRUE(back) << to_string(s.id()) << ": " << render_formula(inst);
      for (char m : s.metavariables()) EXPECT_TRUE(formulas_equal(back->at(m), sigma.at(m)));
      EXPECT_TRUE(structurally_equal(instantiate_schema(s, *back), inst));
    }
  }
}

TEST(Schema, ClassifyAgreesWithBruteForceUpToSize9) {
  auto patterns = parsed_patterns();
  auto by_size = enumerate_by_size({"p", "q"}, 9);
  std::size_t total = 0;
  std::size_t disagreements = 0;
  std::size_t ambiguous = 0;
  for (const auto& bucket : by_size) {
    for (const auto& f : bucket) {
      ++total;
      auto want = oracle_classify(f, patterns);
      auto got = classify_axiom(f);
      if (got != want) {
        if (++disagreements < 10) ADD_FAILURE() << "classify mismatch on " << render_formula(f);
      }
      for (std::size_t i = 0; i < patterns.size(); ++i) {
        auto matches = brute_force_matches(patterns[i], f);
        if (matches.size() > 1) ++ambiguous;
        auto m = match_schema(all_schemas()[i], f);
        EXPECT_EQ(m.has_value(), !matches.empty());
        if (m && matches.size() == 1)
          for (const auto& [k, v] : matches[0]) EXPECT_TRUE(structurally_equal(m->at(k), v));
      }
    }
  }
  EXPECT_EQ(total, 133218u);
  EXPECT_EQ(disagreements, 0u);
  EXPECT_EQ(ambiguous, 0u);
}

TEST(Sharing, Examples) {
  EXPECT_EQ(check_variable_sharing(parse_formula("p -> (q -> p)")), SharingVerdict::Shared);
  EXPECT_EQ(check_variable_sharing(parse_formula("q -> (~q -> p)")), SharingVerdict::Shared);
  EXPECT_EQ(check_variable_sharing(parse_formula("(p & ~p) -> q")), SharingVerdict::Violation);
  EXPECT_EQ(check_variable_sharing(parse_formula("p & q")), SharingVerdict::NotAnImplication);
  EXPECT_EQ(check_variable_sharing(parse_formula("T[p] -> p")), SharingVerdict::Shared);
}

TEST(Sharing, AgreesWithAtomOracle) {
  Gen gen(0x5c4e0002);
  for (int i = 0; i < 3000; ++i) {
    Formula f = gen.formula(1 + gen.below(20));
    SharingVerdict want = SharingVerdict::NotAnImplication;
    if (f.is(K::Imp)) {
      auto l = oracle_atoms(f.left());
      auto r = oracle_atoms(f.right());
      bool meet = std::any_of(l.begin(), l.end(), [&](const std::string& a) { return r.count(a) != 0; });
      want = meet ? SharingVerdict::Shared : SharingVerdict::Violation;
    }
    EXPECT_EQ(check_variable_sharing(f), want) << render_formula(f);
  }
}

#include <gtest/gtest.h>

#include "redarg/analysis.hpp"
#include "redarg/errors.hpp"
#include "support.hpp"

namespace redarg {
namespace {

using testing::corpus;
using testing::load;
using testing::term;
using IndexMap = std::map<std::string, std::set<std::size_t>>;

TEST(Analysis, RedundantPositions) {
  Trs trs = corpus("applast");
  RedundancySet known = RedundancySet::from_indices({{"lastnew", {1}}});
  Term t = term(trs, "lastnew(S(x), cons(y, ys), lastnew(Z, nil, z))");
  std::vector<std::string> got;
  for (const Position& p : redundant_positions(t, known)) got.push_back(p.to_string());
  EXPECT_EQ(got, (std::vector<std::string>{"1", "1.1", "3.1"}));
}

TEST(Analysis, FiRedundantVariable) {
  Trs trs = corpus("applast");
  RedundancySet none;
  Term r = term(trs, "lastnew(y, ys, z)");
  EXPECT_TRUE(is_fi_redundant_var("y", r, "lastnew", 1, none));
  EXPECT_FALSE(is_fi_redundant_var("ys", r, "lastnew", 1, none));
  EXPECT_TRUE(is_fi_redundant_var("w", r, "lastnew", 1, none));
  RedundancySet known = RedundancySet::from_indices({{"lastnew", {2}}});
  EXPECT_TRUE(is_fi_redundant_var("ys", r, "lastnew", 1, known));
}

TEST(Analysis, VariableCase) {
  Trs trs = corpus("applast");
  RedundancySet none;
  EXPECT_TRUE(variable_case(trs, "lastnew", 1, none));
  EXPECT_FALSE(variable_case(trs, "lastnew", 2, none));
  EXPECT_FALSE(variable_case(trs, "lastnew", 3, none));
  EXPECT_FALSE(variable_case(trs, "applast", 1, none));
  EXPECT_THROW(variable_case(load("testdata/non_cs.trs"), "f", 2, none), PreconditionUnmet);
  EXPECT_THROW(variable_case(load("testdata/fxx.trs"), "f", 1, none), PreconditionUnmet);
}

TEST(Analysis, VariableCasePerformsNoRewriting) {
  Trs trs = corpus("applast");
  RedundancySet none;
  auto before = rewrite_steps_performed();
  for (std::size_t i = 1; i <= 3; ++i) variable_case(trs, "lastnew", i, none);
  variable_case(trs, "applast", 2, none);
  EXPECT_EQ(rewrite_steps_performed(), before);
}

TEST(Analysis, TriplesOfLastnewTwo) {
  Trs trs = corpus("applast");
  auto triples = fi_triples(trs, "lastnew", 2);
  ASSERT_EQ(triples.size(), 1u);
  const FITriple& t = triples.front();
  EXPECT_EQ(t.rule1, 2u);
  EXPECT_EQ(t.rule2, 3u);
  EXPECT_EQ(t.second.lhs.to_string(), "lastnew(x',cons(y',ys'),z')");
  EXPECT_EQ(t.sigma.to_string(), "{x -> x', z -> z'}");
  EXPECT_EQ(sigma_c(t, trs.signature()).to_string(), "{x -> x', y' -> Z, ys' -> nil, z -> z'}");
  EXPECT_EQ(tau_transform(t.second.rhs, t.second.lhs, "lastnew", 2, trs.signature()).to_string(),
            "lastnew(y',nil,z')");
  EXPECT_TRUE(fi_triples(trs, "applast", 2).empty());
}

TEST(Analysis, TauIsIdentityOnVariableArgument) {
  Trs trs = corpus("applast");
  const Rule& r = trs.rules()[3];
  EXPECT_EQ(tau_transform(r.rhs, r.lhs, "lastnew", 1, trs.signature()), r.rhs);
}

TEST(Analysis, PatternCase) {
  Trs trs = corpus("applast");
  RedundancySet none;
  PatternCaseResult blocked = pattern_case(trs, "lastnew", 2, none, 1000);
  EXPECT_EQ(blocked.verdict, Tri::False);
  EXPECT_NE(blocked.reason.find("variable y "), std::string::npos) << blocked.reason;
  RedundancySet first = RedundancySet::from_indices({{"lastnew", {1}}});
  PatternCaseResult two = pattern_case(trs, "lastnew", 2, first, 1000);
  EXPECT_EQ(two.verdict, Tri::True);
  ASSERT_EQ(two.triples.size(), 1u);
  EXPECT_EQ(two.triples[0].right.to_string(), "lastnew(Z,nil,z')");
  ASSERT_TRUE(two.triples[0].right_nf);
  EXPECT_EQ(two.triples[0].right_nf->to_string(), "z'");
  EXPECT_EQ(pattern_case(trs, "lastnew", 3, none, 1000).verdict, Tri::False);
  EXPECT_EQ(pattern_case(trs, "applast", 1, none, 1000).verdict, Tri::False);
  RedundancySet known = RedundancySet::from_indices({{"lastnew", {1, 2}}});
  EXPECT_EQ(pattern_case(trs, "applast", 1, known, 1000).verdict, Tri::True);
}

TEST(Analysis, PatternCaseGates) {
  RedundancySet none;
  EXPECT_THROW(pattern_case(load("testdata/nonconfluent.trs"), "g", 1, none, 1000), PreconditionUnmet);
  EXPECT_THROW(pattern_case(load("testdata/non_seval_defined.trs"), "f", 1, none, 1000),
               PreconditionUnmet);
  EXPECT_THROW(pattern_case(load("testdata/non_cs.trs"), "f", 1, none, 1000), PreconditionUnmet);
}

TEST(Analysis, CorpusFixpoints) {
  const std::map<std::string, IndexMap> expected = {
      {"bogus", {{"loop", {2}}}},
      {"applast", {{"applast", {1}}, {"lastnew", {1, 2}}}},
      {"plus_minus", {{"minus_pe", {1}}}},
      {"plus_leq", {{"leq_pe", {1, 2}}}},
      {"double_even", {{"even_pe", {1}}}},
      {"sum_allzeros", {{"sum_pe", {1}}}},
      {"mutrec1", {{"f", {1, 2}}}},
      {"mutrec2", {{"f", {1}}}},
  };
  for (const auto& [name, want] : expected) {
    AnalysisResult r = analyze(corpus(name));
    EXPECT_EQ(r.redundant.index_map(), want) << name;
    EXPECT_TRUE(r.variable_case_enabled) << name;
    EXPECT_TRUE(r.pattern_case_enabled) << name;
    EXPECT_TRUE(r.unknown.empty()) << name;
  }
}

TEST(Analysis, ApplastNeedsThreeRounds) {
  AnalysisResult r = analyze(corpus("applast"));
  const auto& e = r.redundant.entries();
  EXPECT_EQ(e.at("lastnew").at(1).method, Method::VariableCase);
  EXPECT_EQ(e.at("lastnew").at(1).round, 1);
  EXPECT_EQ(e.at("lastnew").at(2).method, Method::PatternCase);
  EXPECT_EQ(e.at("lastnew").at(2).round, 2);
  EXPECT_EQ(e.at("applast").at(1).round, 3);
}

TEST(Analysis, MethodSelection) {
  AnalysisConfig vc;
  vc.pattern_case = false;
  EXPECT_EQ(analyze(corpus("applast"), vc).redundant.index_map(), (IndexMap{{"lastnew", {1}}}));
  AnalysisConfig one_round;
  one_round.max_rounds = 1;
  EXPECT_EQ(analyze(corpus("applast"), one_round).redundant.index_map(),
            (IndexMap{{"lastnew", {1}}}));
}

TEST(Analysis, Gating) {
  AnalysisResult nc = analyze(load("testdata/nonconfluent.trs"));
  EXPECT_FALSE(nc.pattern_case_enabled);
  for (const auto& [f, idx] : nc.redundant.entries()) {
    for (const auto& [i, why] : idx) EXPECT_EQ(why.method, Method::VariableCase);
  }
  AnalysisResult nsd = analyze(load("testdata/non_seval_defined.trs"));
  EXPECT_FALSE(nsd.pattern_case_enabled);
  EXPECT_TRUE(nsd.redundant.empty());
  AnalysisResult ncs = analyze(load("testdata/non_cs.trs"));
  EXPECT_FALSE(ncs.variable_case_enabled);
  EXPECT_FALSE(ncs.pattern_case_enabled);
  EXPECT_TRUE(ncs.redundant.empty());
  EXPECT_EQ(ncs.notes.size(), 2u);
}

TEST(Analysis, FourRuleSystem) {
  EXPECT_TRUE(analyze(load("testdata/f4.trs")).redundant.empty());
  EXPECT_EQ(analyze(load("testdata/fax.trs")).redundant.index_map(), (IndexMap{{"f", {2}}}));
}

}  // namespace
}  // namespace redarg

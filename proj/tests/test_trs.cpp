#include <gtest/gtest.h>

#include "redarg/errors.hpp"
#include "redarg/trs.hpp"
#include "support.hpp"

namespace redarg {
namespace {

using testing::corpus;
using testing::corpus_names;
using testing::load;
using testing::term;

TEST(Parser, ReadsDeclarationsAndRules) {
  Trs trs = corpus("applast");
  EXPECT_EQ(trs.signature().sorts().size(), 2u);
  EXPECT_EQ(trs.signature().symbols().size(), 6u);
  ASSERT_EQ(trs.rules().size(), 4u);
  EXPECT_TRUE(trs.terminating_attested());
  EXPECT_EQ(trs.rules()[3].to_string(), "lastnew(x,cons(y,ys),z) -> lastnew(y,ys,z)");
  EXPECT_EQ(trs.rules_of("lastnew"), (std::vector<std::size_t>{2, 3}));
  EXPECT_EQ(trs.rule_label(0), "r1");
  EXPECT_EQ(trs.rules()[2].rhs.sort().name, "Nat");
}

TEST(Parser, RuleLabels) {
  Trs trs = parse_trs("sort T\ncons a : T\nfun f : T -> T\nrule base: f(x) -> a\n");
  EXPECT_EQ(trs.rule_label(0), "base");
}

TEST(Parser, FormatRoundTrips) {
  for (const auto& name : corpus_names()) {
    Trs a = corpus(name);
    Trs b = parse_trs(format_trs(a));
    EXPECT_EQ(a.rules(), b.rules()) << name;
    EXPECT_EQ(a.terminating_attested(), b.terminating_attested()) << name;
  }
}

TEST(Parser, Errors) {
  EXPECT_THROW(parse_trs("sort T\ncons a : T\nfun f : T -> T\nrule x -> f(x)\n"), WellFormednessError);
  EXPECT_THROW(parse_trs("sort T\ncons a : T\nfun f : T -> T\nrule f(x) -> y\n"), WellFormednessError);
  EXPECT_THROW(parse_trs("sort T\ncons a : U\n"), WellFormednessError);
  EXPECT_THROW(parse_trs("sort T\nbogus line\n"), ParseError);
  EXPECT_THROW(parse_trs("sort T\ncons a : T\nfun f : T -> T\nrule f(a, a) -> a\n"), WellFormednessError);
  EXPECT_THROW(parse_trs("sort T\ncons a : T\nfun f : T -> T\nrule f(x) -> a $\n"), ParseError);
  try {
    parse_trs("sort T\ncons a : T\nfun f : T -> T\nrule f(x) -> (\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4u);
  }
}

TEST(Parser, TermsAndRules) {
  Trs trs = corpus("applast");
  Term t = term(trs, "applast(cons(x, nil), Z)");
  EXPECT_EQ(t.arg(1).arg(1).sort().name, "Nat");
  EXPECT_THROW(term(trs, "x"), WellFormednessError);
  Rule r = parse_rule("applast(nil, z) -> z", trs.signature());
  EXPECT_EQ(r.rhs.sort().name, "Nat");
  EXPECT_THROW(parse_rule("applast(nil, z) -> w", trs.signature()), WellFormednessError);
}

TEST(Signature, DesignatedConstants) {
  Trs trs = corpus("plus_leq");
  EXPECT_EQ(trs.signature().constant_for(Sort{"Nat"}).to_string(), "Z");
  EXPECT_EQ(trs.signature().constant_for(Sort{"Bool"}).to_string(), "True");
  Trs only_succ = parse_trs("sort A\nsort B\ncons k : A -> B\ncons a : A\n");
  EXPECT_EQ(only_succ.signature().constant_for(Sort{"B"}).to_string(), "k(a)");
  Trs empty = parse_trs("sort A\ncons s : A -> A\n");
  EXPECT_THROW(empty.signature().constant_for(Sort{"A"}), NoGroundConstant);
}

TEST(Trs, KindsFollowRules) {
  Trs trs = parse_trs("sort T\ncons a : T\nfun f : T -> T\nfun g : T -> T\nrule f(x) -> g(x)\n");
  EXPECT_FALSE(trs.signature().at("f")->is_constructor());
  EXPECT_TRUE(trs.signature().at("g")->is_constructor());
}

TEST(Trs, AdoptRebindsSymbols) {
  Trs trs = corpus("applast");
  Signature other = trs.signature();
  Term t = parse_term("applast(nil, Z)", other);
  Term a = trs.adopt(t);
  EXPECT_EQ(a, t);
  EXPECT_EQ(a.symbol_ref(), trs.signature().at("applast"));
  Trs tiny = parse_trs("sort Nat\ncons Q : Nat\n");
  EXPECT_THROW(trs.adopt(parse_term("Q", tiny.signature())), WellFormednessError);
}

TEST(Trs, RenameApart) {
  Trs trs = corpus("applast");
  const Rule& r = trs.rules()[3];
  Rule s = rename_apart(r, vars(r.lhs));
  for (const Term& x : vars(s.lhs)) EXPECT_FALSE(occurs(x.name(), r.lhs)) << x.name();
  EXPECT_EQ(s.lhs.to_string(), "lastnew(x',cons(y',ys'),z')");
}

TEST(Properties, LeftLinearity) {
  EXPECT_FALSE(check_left_linear(corpus("applast")));
  auto w = check_left_linear(load("testdata/fxx.trs"));
  ASSERT_TRUE(w);
  EXPECT_EQ(w->rule, 0u);
  EXPECT_EQ(w->variable, "x");
}

TEST(Properties, ConstructorSystem) {
  for (const auto& name : corpus_names()) EXPECT_FALSE(check_constructor_system(corpus(name))) << name;
  auto w = check_constructor_system(load("testdata/non_cs.trs"));
  ASSERT_TRUE(w);
  EXPECT_EQ(w->rule, 1u);
}

TEST(Properties, CriticalPairs) {
  Trs nc = load("testdata/nonconfluent.trs");
  auto cps = critical_pairs(nc);
  bool found = false;
  for (const auto& cp : cps) {
    if (cp.overlay && !cp.trivial && cp.left.to_string() == "0" && cp.right.to_string() == "s(0)") found = true;
  }
  EXPECT_TRUE(found);
  for (const auto& name : corpus_names()) EXPECT_TRUE(critical_pairs(corpus(name)).empty()) << name;
}

TEST(Properties, Confluence) {
  for (const auto& name : corpus_names()) {
    EXPECT_EQ(check_confluence(corpus(name), 1000).verdict, Confluence::YesOrthogonal) << name;
  }
  ConfluenceResult nc = check_confluence(load("testdata/nonconfluent.trs"), 1000);
  EXPECT_EQ(nc.verdict, Confluence::No);
  ASSERT_TRUE(nc.witness);
  EXPECT_EQ(nc.witness->left.to_string(), "0");
  EXPECT_EQ(nc.witness->right.to_string(), "s(0)");
  Trs kb = parse_trs(
      "sort T\ncons a : T\ncons b : T\nfun f : T -> T\npragma terminating\nrule f(x) -> a\nrule f(a) -> f(b)\n");
  EXPECT_EQ(check_confluence(kb, 1000).verdict, Confluence::YesKnuthBendix);
  Trs unattested = kb.with_termination(false);
  EXPECT_EQ(check_confluence(unattested, 1000).verdict, Confluence::Unknown);
}

TEST(Properties, CompletelyDefined) {
  for (const auto& name : corpus_names()) {
    EXPECT_TRUE(check_completely_defined(corpus(name)).complete) << name;
  }
  CompletenessResult r = check_completely_defined(load("testdata/non_seval_defined.trs"));
  EXPECT_FALSE(r.complete);
  ASSERT_EQ(r.uncovered.count("g"), 1u);
  std::vector<std::string> pats;
  for (const Term& t : r.uncovered.at("g")) pats.push_back(t.to_string());
  ASSERT_FALSE(pats.empty());
  EXPECT_EQ(pats.front(), "g(0)");
  EXPECT_THROW(check_completely_defined(load("testdata/non_cs.trs")), NotAConstructorSystem);
}

TEST(Properties, SevalDefined) {
  EXPECT_TRUE(check_seval_defined(corpus("applast")).holds);
  SevalDefinedness r = check_seval_defined(load("testdata/non_seval_defined.trs"));
  EXPECT_FALSE(r.holds);
  EXPECT_FALSE(r.failing.empty());
  EXPECT_FALSE(check_seval_defined(corpus("applast").with_termination(false)).holds);
}

TEST(Properties, Report) {
  PropertyReport p = check_properties(load("testdata/non_cs.trs"), 1000);
  EXPECT_FALSE(p.constructor_system);
  EXPECT_FALSE(p.completely_defined);
  EXPECT_FALSE(p.seval_defined);
}

}  // namespace
}  // namespace redarg

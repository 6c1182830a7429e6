#include <gtest/gtest.h>

#include <algorithm>

#include "redarg/errors.hpp"
#include "redarg/rewrite.hpp"
#include "support.hpp"

namespace redarg {
namespace {

using testing::corpus;
using testing::load;
using testing::term;

/// Independent single-step reference: every (position, rule) redex by brute force.
std::vector<Term> reference_reducts(const Term& t, const Trs& trs) {
  std::vector<Term> out;
  for (const Position& p : positions(t)) {
    Term s = subterm(t, p);
    for (const Rule& r : trs.rules()) {
      if (auto m = match(r.lhs, s)) out.push_back(replace(t, p, m->apply(r.rhs)));
    }
  }
  return out;
}

TEST(Rewrite, InnermostAndOutermostPickDifferentRedexes) {
  Trs trs = corpus("plus_minus");
  Term t = term(trs, "minus_pe(minus_pe(Z, S(Z)), Z)");
  auto in = rewrite_step(t, trs, Strategy::LeftmostInnermost);
  auto out = rewrite_step(t, trs, Strategy::LeftmostOutermost);
  ASSERT_TRUE(in && out);
  EXPECT_EQ(in->position.to_string(), "1");
  EXPECT_EQ(in->result, term(trs, "minus_pe(S(Z), Z)"));
  EXPECT_EQ(out->position.to_string(), "1");
  Term u = term(trs, "minus_pe(S(Z), minus_pe(Z, Z))");
  auto in2 = rewrite_step(u, trs, Strategy::LeftmostInnermost);
  auto out2 = rewrite_step(u, trs, Strategy::LeftmostOutermost);
  ASSERT_TRUE(in2 && out2);
  EXPECT_EQ(in2->position.to_string(), "2");
  EXPECT_EQ(out2->position.to_string(), "e");
}

TEST(Rewrite, RulesTriedInFileOrder) {
  Trs nc = load("testdata/nonconfluent.trs");
  auto s = rewrite_step(term(nc, "g(0)"), nc, Strategy::LeftmostInnermost);
  ASSERT_TRUE(s);
  EXPECT_EQ(s->rule, 2u);
  EXPECT_EQ(s->result, term(nc, "0"));
}

TEST(Rewrite, OneStepReductsMatchReference) {
  Trs nc = load("testdata/nonconfluent.trs");
  for (const char* text : {"f(s(g(0)))", "g(f(s(0)))", "g(g(s(0)))"}) {
    Term t = term(nc, text);
    std::vector<Term> got;
    for (const Step& s : one_step_reducts(t, nc)) got.push_back(s.result);
    std::vector<Term> want = reference_reducts(t, nc);
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    EXPECT_EQ(got, want) << text;
  }
}

TEST(Rewrite, NormalFormsAndRootRedexes) {
  Trs trs = corpus("plus_minus");
  EXPECT_TRUE(is_normal_form(term(trs, "S(Z)"), trs));
  EXPECT_FALSE(is_normal_form(term(trs, "S(minus_pe(Z, Z))"), trs));
  EXPECT_FALSE(has_root_redex(term(trs, "S(minus_pe(Z, Z))"), trs));
  EXPECT_TRUE(has_root_redex(term(trs, "minus_pe(Z, Z)"), trs));
}

TEST(Rewrite, NormalizeCountsSteps) {
  Trs trs = corpus("plus_minus");
  Term t = term(trs, "minus_pe(S(S(S(Z))), S(Z))");
  std::vector<Step> trace;
  EvalOutcome r = normalize(t, trs, Strategy::LeftmostInnermost, 100, &trace);
  EXPECT_EQ(r.kind, EvalOutcome::Kind::NormalForm);
  EXPECT_EQ(r.term, term(trs, "S(Z)"));
  EXPECT_EQ(r.steps, 4u);
  EXPECT_EQ(trace.size(), 4u);
  std::string line = format_trace_line(t, trace[0], trs);
  EXPECT_NE(line.find("r2"), std::string::npos) << line;
}

TEST(Rewrite, FuelExhaustion) {
  Trs loop = parse_trs("sort T\ncons a : T\nfun f : T -> T\nrule f(x) -> f(x)\n");
  EvalOutcome r = normalize(term(loop, "f(a)"), loop, Strategy::LeftmostInnermost, 25);
  EXPECT_EQ(r.kind, EvalOutcome::Kind::FuelExhausted);
  EXPECT_EQ(r.steps, 25u);
  EXPECT_FALSE(r.reached_normal_form());
}

TEST(Rewrite, EvalClassifiesValues) {
  Trs nsd = load("testdata/non_seval_defined.trs");
  EXPECT_EQ(eval(term(nsd, "f(s(0))"), nsd, 100).kind, EvalOutcome::Kind::Value);
  EvalOutcome stuck = eval(term(nsd, "g(0)"), nsd, 100);
  EXPECT_EQ(stuck.kind, EvalOutcome::Kind::NormalForm);
  EXPECT_EQ(stuck.term, term(nsd, "g(0)"));
  Trs trs = corpus("plus_minus");
  EXPECT_THROW(eval(term(trs, "minus_pe(x, Z)"), trs, 100), Error);
}

TEST(Rewrite, Joinable) {
  Trs trs = corpus("plus_minus");
  EXPECT_EQ(joinable(term(trs, "minus_pe(S(Z), y)"), term(trs, "minus_pe(Z, y)"), trs, 100), Tri::True);
  EXPECT_EQ(joinable(term(trs, "minus_pe(x, y)"), term(trs, "minus_pe(Z, y)"), trs, 100), Tri::False);
  Trs loop = parse_trs("sort T\ncons a : T\nfun f : T -> T\nrule f(x) -> f(x)\n");
  EXPECT_EQ(joinable(term(loop, "f(a)"), term(loop, "a"), loop, 10), Tri::Indeterminate);
}

TEST(Rewrite, StepCounterAdvances) {
  Trs trs = corpus("plus_minus");
  auto before = rewrite_steps_performed();
  normalize(term(trs, "minus_pe(S(Z), Z)"), trs, Strategy::LeftmostInnermost, 100);
  EXPECT_GE(rewrite_steps_performed(), before + 2);
}

std::vector<std::string> strings(const BoundedSet& s) {
  std::vector<std::string> out;
  for (const Term& t : s.terms) out.push_back(t.to_string());
  return out;
}

TEST(Semantics, NonConfluentEval) {
  Trs nc = load("testdata/nonconfluent.trs");
  Term t = term(nc, "f(s(0))");
  BoundedSet ev = bounded_semantics(t, nc, {SemanticsKind::Eval});
  EXPECT_FALSE(ev.truncated);
  std::vector<std::string> got = strings(ev);
  std::sort(got.begin(), got.end());
  EXPECT_EQ(got, (std::vector<std::string>{"0", "s(0)"}));
  BoundedSet red = bounded_semantics(t, nc, {SemanticsKind::Red});
  EXPECT_EQ(red.terms.size(), 5u);
  EXPECT_TRUE(bounded_semantics(t, nc, {SemanticsKind::Empty}).terms.empty());
}

TEST(Semantics, HeadNormalForms) {
  Trs trs = corpus("plus_minus");
  Term t = term(trs, "minus_pe(S(Z), S(minus_pe(Z, Z)))");
  BoundedSet h = bounded_semantics(t, trs, {SemanticsKind::Hnf});
  for (const Term& s : h.terms) EXPECT_FALSE(has_root_redex(s, trs)) << s.to_string();
  std::vector<std::string> got = strings(h);
  std::sort(got.begin(), got.end());
  EXPECT_EQ(got, (std::vector<std::string>{"S(Z)", "S(minus_pe(Z,Z))"}));
}

TEST(Semantics, Truncation) {
  Trs grow = parse_trs("sort T\ncons a : T\ncons c : T -> T\nfun f : T -> T\nrule f(x) -> f(c(x))\n");
  SemanticsSelector sel{SemanticsKind::Red, 10, 100};
  BoundedSet s = bounded_semantics(term(grow, "f(a)"), grow, sel);
  EXPECT_TRUE(s.truncated);
  EXPECT_LE(s.terms.size(), 10u);
}

}  // namespace
}  // namespace redarg

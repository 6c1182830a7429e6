#include <gtest/gtest.h>

#include "invariants.hpp"

namespace redarg {
namespace {

using namespace redarg::testing;

std::vector<Trs> corpus_systems() {
  std::vector<Trs> out;
  for (const auto& name : corpus_names()) out.push_back(corpus(name));
  return out;
}

TEST(Invariants, ErasureIsAHomomorphism) {
  Outcome r = homomorphism(1000, 2024);
  EXPECT_TRUE(r.ok) << r.detail;
  EXPECT_EQ(r.checked, 1000u);
}

TEST(Invariants, AnalysisIgnoresRuleAndCandidateOrder) {
  std::vector<Trs> systems = corpus_systems();
  systems.push_back(load("testdata/nonconfluent.trs"));
  Outcome r = shuffle_determinism(systems, 10);
  EXPECT_TRUE(r.ok) << r.detail;
}

TEST(Invariants, LeftLinearityPreserved) {
  std::vector<Trs> systems = corpus_systems();
  systems.push_back(load("testdata/fax.trs"));
  systems.push_back(load("testdata/f4.trs"));
  Outcome r = left_linearity_preserved(systems);
  EXPECT_TRUE(r.ok) << r.detail;
  EXPECT_EQ(r.checked, 20u);
}

TEST(Invariants, ConfluencePreserved) {
  Outcome r = confluence_preserved(corpus_systems(), kDefaultFuel);
  EXPECT_TRUE(r.ok) << r.detail;
  EXPECT_EQ(r.checked, 8u);
}

TEST(Invariants, SemanticsFiltration) {
  std::vector<Trs> systems = {corpus("applast"), corpus("plus_leq"), load("testdata/nonconfluent.trs")};
  Outcome r = filtration(systems, 100, 4, 11);
  EXPECT_TRUE(r.ok) << r.detail;
}

}  // namespace
}  // namespace redarg

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "redarg/rewrite.hpp"
#include "redarg/term.hpp"
#include "redarg/trs.hpp"

namespace redarg {

enum class Method { VariableCase, PatternCase };
std::string to_string(Method m);

/// One joinability test of an (f,i)-triple, kept for reports.
struct TripleCheck {
  std::size_t rule1 = 0;  // 0-based rule indices
  std::size_t rule2 = 0;
  Substitution sigma;
  Substitution sigma_c;
  Term left;   // sigma_c(tau_l(r))
  Term right;  // sigma_c(tau_l'(r'))
  std::optional<Term> left_nf;
  std::optional<Term> right_nf;
  Tri joinable = Tri::Indeterminate;
};

struct Justification {
  Method method = Method::VariableCase;
  int round = 0;
  std::vector<TripleCheck> triples;
};

/// Redundant argument indices (1-based) per defined symbol, with how each was found.
class RedundancySet {
 public:
  using Entries = std::map<std::string, std::map<std::size_t, Justification>>;

  static RedundancySet from_indices(const std::map<std::string, std::set<std::size_t>>& m);

  void add(const std::string& f, std::size_t i, Justification why);
  bool contains(std::string_view f, std::size_t i) const;
  std::set<std::size_t> indices(std::string_view f) const;
  std::map<std::string, std::set<std::size_t>> index_map() const;
  const Entries& entries() const { return entries_; }
  std::size_t total() const;
  bool empty() const { return entries_.empty(); }

 private:
  Entries entries_;
};

/// An (f,i)-triple: two distinct rules of f, the second renamed apart with
/// primes, whose left-hand sides unify once argument i is deleted.
struct FITriple {
  std::size_t rule1 = 0;
  std::size_t rule2 = 0;
  Rule first;
  Rule second;
  Substitution sigma;
  std::string f;
  std::size_t i = 0;
};

struct AnalysisConfig {
  std::size_t fuel = kDefaultFuel;
  int max_rounds = 32;
  bool variable_case = true;
  bool pattern_case = true;
  Strategy strategy = Strategy::LeftmostInnermost;
  /// When set, candidates are tested in a seeded random order.
  std::optional<std::uint64_t> shuffle_seed;
};

struct UnresolvedCandidate {
  std::string f;
  std::size_t i = 0;
  int round = 0;
  std::string reason;
};

struct AnalysisResult {
  RedundancySet redundant;
  PropertyReport properties;
  bool variable_case_enabled = false;
  bool pattern_case_enabled = false;
  /// Why a method was gated off, one line per method.
  std::vector<std::string> notes;
  /// Candidates whose pattern-case verdict was indeterminate (fuel).
  std::vector<UnresolvedCandidate> unknown;
  int rounds = 0;
};

/// Positions below an argument already known to be redundant:
/// {p | p = q.i.p', root(t|_q) = f, i in known(f)}.
std::vector<Position> redundant_positions(const Term& t, const RedundancySet& known);

/// Every occurrence of x in r is in a redundant position or below the i-th
/// argument of an f-rooted subterm. Vacuously true when x does not occur.
bool is_fi_redundant_var(std::string_view x, const Term& r, std::string_view f, std::size_t i,
                         const RedundancySet& known);

/// Throws PreconditionUnmet unless the TRS is a left-linear constructor system.
bool variable_case(const Trs& trs, std::string_view f, std::size_t i, const RedundancySet& known);

std::vector<FITriple> fi_triples(const Trs& trs, std::string_view f, std::size_t i);

/// Replaces the outermost f-argument-i positions of r that share variables
/// with l|_i by the designated constant of their sort; identity when l|_i is a variable.
Term tau_transform(const Term& r, const Term& l, std::string_view f, std::size_t i,
                   const Signature& sig);

/// sigma extended with x -> a for every variable of either rule's i-th lhs argument.
Substitution sigma_c(const FITriple& triple, const Signature& sig);

struct PatternCaseResult {
  Tri verdict = Tri::False;
  std::vector<TripleCheck> triples;
  std::string reason;
};

/// Throws PreconditionUnmet naming the failing gate (LL, CS, C or ED).
PatternCaseResult pattern_case(const Trs& trs, const PropertyReport& props, std::string_view f,
                               std::size_t i, const RedundancySet& known, std::size_t fuel,
                               Strategy strategy = Strategy::LeftmostInnermost);
PatternCaseResult pattern_case(const Trs& trs, std::string_view f, std::size_t i,
                               const RedundancySet& known, std::size_t fuel);

/// Fixpoint of the enabled, gated detection methods. Each round tests every
/// open candidate against the redundancies known at the start of the round.
AnalysisResult analyze(const Trs& trs, const AnalysisConfig& cfg = {});

}  // namespace redarg

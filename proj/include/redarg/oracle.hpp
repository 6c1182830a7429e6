#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "redarg/erasure.hpp"
#include "redarg/rewrite.hpp"
#include "redarg/term.hpp"
#include "redarg/trs.hpp"

namespace redarg {

/// Name of the hole variable in one-hole contexts.
inline constexpr std::string_view kHole = "[]";

Term hole(const Sort& sort);
/// C[t]
Term plug(const Term& context, const Term& t);
/// Parses a context written with `[]` for the hole; the hole sort is inferred.
Term parse_context(std::string_view text, const Signature& sig);

/// Ground terms of `sort` with depth <= `depth`, ordered by depth, then
/// symbol declaration order, then arguments lexicographically.
/// Throws EmptySort when there are none.
std::vector<Term> enumerate_ground_terms(const Signature& sig, const Sort& sort, std::size_t depth);

/// One-hole contexts of any result sort whose hole has `hole_sort`, with
/// depth <= `depth`. The hole has depth 0; the empty context comes first.
std::vector<Term> enumerate_contexts(const Signature& sig, const Sort& hole_sort, std::size_t depth);

struct EnumBounds {
  std::size_t ctx_depth = 3;
  std::size_t term_depth = 3;
  std::size_t max_cases = 50000;
  std::size_t max_terms = kDefaultMaxTerms;
  std::size_t max_edges = kDefaultMaxEdges;
};

struct Counterexample {
  Term context;
  Term term;         // f-rooted
  Term replacement;  // the new i-th argument
  std::vector<Term> before;
  std::vector<Term> after;
};

struct Verdict {
  std::optional<Counterexample> counterexample;
  std::size_t ctx_depth = 0;
  std::size_t term_depth = 0;
  std::size_t cases_checked = 0;
  std::size_t skipped_truncated = 0;
  bool case_limit_hit = false;

  bool found() const { return counterexample.has_value(); }
};

/// Searches for C, t = f(...), s with Seval(C[t]) != Seval(C[t[s]_i]), both
/// sides explored without truncation. Contexts, then terms, then
/// replacements, each in enumeration order.
Verdict brute_force_redundant(const Trs& trs, std::string_view f, std::size_t i,
                              const EnumBounds& bounds = {});

/// Recomputes both sides of a counterexample; true when they still differ
/// and neither exploration was truncated.
bool replay(const Trs& trs, std::size_t i, const Counterexample& cx, const EnumBounds& bounds = {});

struct DiffCase {
  Term input;
  Term erased_input;
  EvalOutcome original;
  EvalOutcome erased;
};

struct DiffReport {
  std::size_t trials = 0;
  std::size_t depth = 0;
  std::uint64_t seed = 0;
  std::size_t agree = 0;
  std::size_t disagree = 0;
  std::size_t indeterminate = 0;
  std::vector<DiffCase> disagreements;

  bool ok() const { return disagree == 0; }
  std::string to_string() const;
};

/// Random ground term of `sort` with depth <= `depth`.
/// Throws EmptySort when the sort has no ground term within `depth`.
Term random_ground_term(const Signature& sig, const Sort& sort, std::size_t depth,
                        std::mt19937_64& rng);

/// Compares eval over `trs` with eval over its erasure (trivial rules
/// removed) on `trials` seeded random ground terms.
DiffReport differential_verify(const Trs& trs, const SyntacticErasure& rho, std::size_t trials,
                               std::size_t depth, std::uint64_t seed,
                               std::size_t fuel = kDefaultFuel);

}  // namespace redarg

#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "redarg/analysis.hpp"
#include "redarg/erasure.hpp"
#include "redarg/oracle.hpp"
#include "redarg/rewrite.hpp"
#include "support.hpp"

namespace redarg::testing {

struct Outcome {
  bool ok = true;
  std::size_t checked = 0;
  std::string detail;

  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

/// Random term of `sort` over three variables per sort.
inline Term random_open_term(const Signature& sig, const Sort& sort, std::size_t depth,
                             std::mt19937_64& rng) {
  std::bernoulli_distribution coin(0.3);
  if (depth <= 1 || coin(rng)) {
    std::uniform_int_distribution<int> pick(0, 2);
    return Term::variable("x" + std::to_string(pick(rng)) + "_" + sort.name, sort);
  }
  std::vector<SymbolRef> fs = sig.symbols_of_sort(sort);
  std::uniform_int_distribution<std::size_t> which(0, fs.size() - 1);
  const SymbolRef& f = fs[which(rng)];
  std::vector<Term> args;
  for (const Sort& s : f->arg_sorts) args.push_back(random_open_term(sig, s, depth - 1, rng));
  return Term::apply(f, std::move(args));
}

inline SyntacticErasure random_erasure(const Signature& sig, std::mt19937_64& rng) {
  std::bernoulli_distribution drop(0.35);
  std::map<std::string, std::set<std::size_t>> m;
  for (const SymbolRef& f : sig.symbols()) {
    for (std::size_t i = 1; i <= f->arity(); ++i) {
      if (drop(rng)) m[f->name].insert(i);
    }
  }
  return SyntacticErasure(m);
}

/// tau(sigma(t)) == sigma'(tau(t)) with sigma'(x) = tau(sigma(x)).
inline Outcome homomorphism(std::size_t trials, std::uint64_t seed) {
  Outcome out;
  std::vector<Trs> systems;
  for (const auto& name : corpus_names()) systems.push_back(corpus(name));
  std::mt19937_64 rng(seed);
  for (std::size_t k = 0; k < trials; ++k) {
    const Signature& sig = systems[k % systems.size()].signature();
    std::uniform_int_distribution<std::size_t> sort_pick(0, sig.sorts().size() - 1);
    Sort sort = sig.sorts()[sort_pick(rng)];
    Term t = random_open_term(sig, sort, 5, rng);
    Substitution sigma;
    for (const Term& x : vars(t)) sigma.bind(x, random_open_term(sig, x.sort(), 4, rng));
    SyntacticErasure rho = random_erasure(sig, rng);
    Substitution erased_sigma;
    for (const auto& [name, value] : sigma.bindings()) {
      erased_sigma.bind(Term::variable(name, value.sort()), erase_term(value, rho, sig));
    }
    Term lhs = erase_term(sigma.apply(t), rho, sig);
    Term rhs = erased_sigma.apply(erase_term(t, rho, sig));
    ++out.checked;
    if (lhs != rhs) out.fail(t.to_string() + ": " + lhs.to_string() + " vs " + rhs.to_string());
  }
  return out;
}

inline std::vector<Rule> shuffled_rules(const Trs& trs, std::mt19937_64& rng) {
  std::vector<Rule> rules = trs.rules();
  std::shuffle(rules.begin(), rules.end(), rng);
  return rules;
}

/// The analysis result is independent of rule order and candidate order.
inline Outcome shuffle_determinism(const std::vector<Trs>& systems, std::size_t seeds) {
  Outcome out;
  for (const Trs& trs : systems) {
    auto want = analyze(trs).redundant.index_map();
    for (std::uint64_t seed = 1; seed <= seeds; ++seed) {
      std::mt19937_64 rng(seed);
      Trs shuffled = trs.with_rules(shuffled_rules(trs, rng));
      AnalysisConfig cfg;
      cfg.shuffle_seed = seed;
      ++out.checked;
      if (analyze(shuffled, cfg).redundant.index_map() != want) {
        out.fail("seed " + std::to_string(seed) + " changes the result");
      }
    }
  }
  return out;
}

inline bool left_linear(const Trs& trs) {
  return std::all_of(trs.rules().begin(), trs.rules().end(), [](const Rule& r) { return is_linear(r.lhs); });
}

/// Erasure outputs of left-linear inputs stay left-linear.
inline Outcome left_linearity_preserved(const std::vector<Trs>& systems) {
  Outcome out;
  for (const Trs& trs : systems) {
    if (!left_linear(trs)) continue;
    SyntacticErasure rho = erasure_from_analysis(analyze(trs).redundant, trs.signature());
    ErasedTrs plain = erase_trs(trs, rho, "'");
    ErasedTrs reduced = reduced_erasure(plain);
    out.checked += 2;
    if (!left_linear(plain.trs)) out.fail("erasure of a left-linear system is not left-linear");
    if (!left_linear(reduced.trs)) out.fail("reduced erasure is not left-linear");
  }
  return out;
}

/// No rule matches at any position.
inline bool reference_normal(const Term& t, const Trs& trs) {
  for (const Position& p : positions(t)) {
    Term s = subterm(t, p);
    for (const Rule& r : trs.rules()) {
      if (match(r.lhs, s)) return false;
    }
  }
  return true;
}

inline bool confluent(Confluence c) { return c == Confluence::YesOrthogonal || c == Confluence::YesKnuthBendix; }

/// Confluent systems keep a positive confluence verdict after erasure
/// (trivial rules removed, termination attested).
inline Outcome confluence_preserved(const std::vector<Trs>& systems, std::size_t fuel) {
  Outcome out;
  for (const Trs& trs : systems) {
    if (!confluent(check_confluence(trs, fuel).verdict)) continue;
    SyntacticErasure rho = erasure_from_analysis(analyze(trs).redundant, trs.signature());
    Trs erased = without_trivial_rules(erase_trs(trs, rho, "'").trs).with_termination(true);
    ConfluenceResult c = check_confluence(erased, fuel);
    ++out.checked;
    if (!confluent(c.verdict)) out.fail("erasure lost confluence: " + c.detail);
  }
  return out;
}

/// Seval = Sred restricted to constructor terms, Snf = Sred restricted to
/// normal forms, and Seval within Snf within Sred, on untruncated explorations.
inline Outcome filtration(const std::vector<Trs>& systems, std::size_t terms, std::size_t depth,
                          std::uint64_t seed) {
  Outcome out;
  std::mt19937_64 rng(seed);
  std::size_t attempts = 0;
  while (out.checked < terms && attempts < terms * 20) {
    const Trs& trs = systems[attempts % systems.size()];
    ++attempts;
    const Signature& sig = trs.signature();
    std::uniform_int_distribution<std::size_t> sort_pick(0, sig.sorts().size() - 1);
    Term t = random_ground_term(sig, sig.sorts()[sort_pick(rng)], depth, rng);
    BoundedSet red = bounded_semantics(t, trs, {SemanticsKind::Red});
    BoundedSet ev = bounded_semantics(t, trs, {SemanticsKind::Eval});
    BoundedSet nf = bounded_semantics(t, trs, {SemanticsKind::Nf});
    if (red.truncated || ev.truncated || nf.truncated) continue;
    ++out.checked;
    std::set<Term> sred(red.terms.begin(), red.terms.end());
    std::set<Term> sev(ev.terms.begin(), ev.terms.end());
    std::set<Term> snf(nf.terms.begin(), nf.terms.end());
    std::set<Term> want_ev, want_nf;
    for (const Term& s : sred) {
      if (s.is_constructor_term()) want_ev.insert(s);
      if (reference_normal(s, trs)) want_nf.insert(s);
    }
    if (sev != want_ev) out.fail("Seval mismatch on " + t.to_string());
    if (snf != want_nf) out.fail("Snf mismatch on " + t.to_string());
    if (!std::includes(snf.begin(), snf.end(), sev.begin(), sev.end())) out.fail("Seval not within Snf on " + t.to_string());
    if (!std::includes(sred.begin(), sred.end(), snf.begin(), snf.end())) out.fail("Snf not within Sred on " + t.to_string());
  }
  if (out.checked < terms) out.fail("only " + std::to_string(out.checked) + " untruncated terms");
  return out;
}

}  // namespace redarg::testing

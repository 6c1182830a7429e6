#include <algorithm>
#include <functional>

#include "redarg/errors.hpp"
#include "redarg/rewrite.hpp"
#include "redarg/trs.hpp"

namespace redarg {

std::string to_string(Confluence c) {
  switch (c) {
    case Confluence::YesOrthogonal: return "yes-orthogonal";
    case Confluence::YesKnuthBendix: return "yes-knuth-bendix";
    case Confluence::No: return "no";
    case Confluence::Unknown: return "unknown";
  }
  return "?";
}

std::optional<LinearityWitness> check_left_linear(const Trs& trs) {
  for (std::size_t k = 0; k < trs.rules().size(); ++k) {
    std::vector<std::string> seen;
    std::optional<std::string> repeated;
    std::function<void(const Term&)> walk = [&](const Term& t) {
      if (repeated) return;
      if (t.is_var()) {
        if (std::find(seen.begin(), seen.end(), t.name()) != seen.end()) {
          repeated = t.name();
        } else {
          seen.push_back(t.name());
        }
        return;
      }
      for (const Term& a : t.args()) walk(a);
    };
    walk(trs.rules()[k].lhs);
    if (repeated) return LinearityWitness{k, *repeated};
  }
  return std::nullopt;
}

std::optional<ConstructorWitness> check_constructor_system(const Trs& trs) {
  for (std::size_t k = 0; k < trs.rules().size(); ++k) {
    const Term& lhs = trs.rules()[k].lhs;
    for (std::size_t i = 1; i <= lhs.arity(); ++i) {
      if (!lhs.arg(i).is_constructor_term()) {
        return ConstructorWitness{k, "argument " + std::to_string(i) + " of " +
                                         lhs.to_string() + " contains a defined symbol"};
      }
    }
  }
  return std::nullopt;
}

std::vector<CriticalPair> critical_pairs(const Trs& trs) {
  std::vector<CriticalPair> out;
  const auto& rules = trs.rules();
  for (std::size_t outer = 0; outer < rules.size(); ++outer) {
    const Rule& o = rules[outer];
    for (std::size_t inner = 0; inner < rules.size(); ++inner) {
      Rule in = rename_apart(rules[inner], vars(o.lhs));
      for (const Position& p : positions(o.lhs)) {
        Term sub = subterm(o.lhs, p);
        if (sub.is_var()) continue;
        // Overlays are reported once per unordered pair, with the earlier rule's rhs on the left.
        if (p.is_root() && outer <= inner) continue;
        auto sigma = unify(sub, in.lhs);
        if (!sigma) continue;
        CriticalPair cp{replace(sigma->apply(o.lhs), p, sigma->apply(in.rhs)),
                        sigma->apply(o.rhs), p.is_root(), false, outer, inner, p};
        cp.trivial = cp.left == cp.right;
        out.push_back(std::move(cp));
      }
    }
  }
  return out;
}

ConfluenceResult check_confluence(const Trs& trs, std::size_t fuel) {
  std::vector<CriticalPair> cps = critical_pairs(trs);
  bool ll = !check_left_linear(trs).has_value();
  bool almost_orthogonal =
      std::all_of(cps.begin(), cps.end(), [](const CriticalPair& cp) { return cp.overlay && cp.trivial; });
  if (ll && almost_orthogonal) {
    return {Confluence::YesOrthogonal, std::nullopt,
            cps.empty() ? "orthogonal" : "almost orthogonal (trivial overlays only)"};
  }
  if (!trs.terminating_attested()) {
    return {Confluence::Unknown, std::nullopt,
            "not orthogonal and termination not attested"};
  }
  bool indeterminate = false;
  for (const CriticalPair& cp : cps) {
    switch (joinable(cp.left, cp.right, trs, fuel)) {
      case Tri::False:
        return {Confluence::No, cp, "critical pair with distinct normal forms"};
      case Tri::Indeterminate:
        indeterminate = true;
        break;
      case Tri::True:
        break;
    }
  }
  if (indeterminate) {
    return {Confluence::Unknown, std::nullopt, "fuel exhausted while joining critical pairs"};
  }
  return {Confluence::YesKnuthBendix, std::nullopt, "all critical pairs joinable"};
}

namespace {

using Tuple = std::vector<Term>;

class CoverageChecker {
 public:
  CoverageChecker(const Signature& sig, std::vector<Tuple> rows) : sig_(sig), rows_(std::move(rows)) {}

  void run(Tuple pattern, std::vector<Tuple>& uncovered) {
    if (uncovered.size() >= kMaxWitnesses) return;
    bool any_unifiable = false;
    std::optional<std::pair<std::size_t, Position>> split;
    for (const Tuple& row : rows_) {
      if (matches(row, pattern)) return;
      std::vector<std::pair<Term, Term>> eqs;
      for (std::size_t k = 0; k < row.size(); ++k) eqs.emplace_back(row[k], pattern[k]);
      if (!unify_all(eqs)) continue;
      any_unifiable = true;
      if (!split) split = split_point(row, pattern);
    }
    if (!any_unifiable || !split) {
      uncovered.push_back(std::move(pattern));
      return;
    }
    auto [k, p] = *split;
    Term var = subterm(pattern[k], p);
    auto ctors = sig_.constructors_of(var.sort());
    if (ctors.empty()) {
      uncovered.push_back(std::move(pattern));
      return;
    }
    for (const auto& c : ctors) {
      std::vector<Term> args;
      for (const Sort& s : c->arg_sorts) args.push_back(fresh(s));
      Tuple next = pattern;
      next[k] = replace(pattern[k], p, Term::apply(c, std::move(args)));
      run(std::move(next), uncovered);
    }
  }

  Term fresh(const Sort& s) { return Term::variable("_" + std::to_string(++counter_), s); }

 private:
  static constexpr std::size_t kMaxWitnesses = 16;

  static bool matches(const Tuple& row, const Tuple& pattern) {
    Substitution merged;
    for (std::size_t k = 0; k < row.size(); ++k) {
      auto sigma = match(row[k], pattern[k]);
      if (!sigma) return false;
      for (const auto& [name, value] : sigma->bindings()) {
        if (const Term* prior = merged.lookup(name)) {
          if (!(*prior == value)) return false;
        } else {
          merged.bind(Term::variable(name, value.sort()), value);
        }
      }
    }
    return true;
  }

  // First variable position of the pattern where the row has a symbol.
  static std::optional<std::pair<std::size_t, Position>> split_point(const Tuple& row,
                                                                     const Tuple& pattern) {
    for (std::size_t k = 0; k < pattern.size(); ++k) {
      for (const Position& p : positions(pattern[k])) {
        if (!subterm(pattern[k], p).is_var()) continue;
        const Term* cur = &row[k];
        bool reached = true;
        for (int i : p.path) {
          if (cur->is_var()) {
            reached = false;
            break;
          }
          cur = &cur->args()[i - 1];
        }
        if (reached && !cur->is_var()) return std::pair{k, p};
      }
    }
    return std::nullopt;
  }

  const Signature& sig_;
  std::vector<Tuple> rows_;
  std::size_t counter_ = 0;
};

}  // namespace

CompletenessResult check_completely_defined(const Trs& trs) {
  if (auto w = check_constructor_system(trs)) {
    throw NotAConstructorSystem("rule " + std::to_string(w->rule + 1) + ": " + w->reason);
  }
  CompletenessResult out;
  const Signature& sig = trs.signature();
  for (const auto& f : sig.defined_symbols()) {
    std::vector<Tuple> rows;
    for (std::size_t idx : trs.rules_of(f->name)) {
      const Term& lhs = trs.rules()[idx].lhs;
      rows.emplace_back(lhs.args().begin(), lhs.args().end());
    }
    CoverageChecker checker(sig, std::move(rows));
    Tuple start;
    for (const Sort& s : f->arg_sorts) start.push_back(checker.fresh(s));
    std::vector<Tuple> uncovered;
    checker.run(std::move(start), uncovered);
    if (!uncovered.empty()) {
      out.complete = false;
      auto& list = out.uncovered[f->name];
      for (Tuple& args : uncovered) list.push_back(Term::apply(f, std::move(args)));
    }
  }
  return out;
}

SevalDefinedness check_seval_defined(const Trs& trs) {
  if (check_constructor_system(trs)) return {false, "completely-defined (not a constructor system)"};
  if (!check_completely_defined(trs).complete) return {false, "completely-defined"};
  if (!trs.terminating_attested()) return {false, "terminating (not attested)"};
  return {true, ""};
}

PropertyReport check_properties(const Trs& trs, std::size_t fuel) {
  PropertyReport rep;
  rep.left_linear_witness = check_left_linear(trs);
  rep.left_linear = !rep.left_linear_witness;
  rep.constructor_witness = check_constructor_system(trs);
  rep.constructor_system = !rep.constructor_witness;
  if (rep.constructor_system) rep.completely_defined = check_completely_defined(trs);
  rep.confluence = check_confluence(trs, fuel);
  rep.terminating_attested = trs.terminating_attested();
  if (!rep.constructor_system) {
    rep.seval_failure = "completely-defined (not a constructor system)";
  } else if (!rep.completely_defined_holds()) {
    rep.seval_failure = "completely-defined";
  } else if (!rep.terminating_attested) {
    rep.seval_failure = "terminating (not attested)";
  }
  rep.seval_defined = rep.seval_failure.empty();
  return rep;
}

}  // namespace redarg

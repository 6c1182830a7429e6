#include "redarg/oracle.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_map>

#include "redarg/errors.hpp"

namespace redarg {

Term hole(const Sort& sort) { return Term::variable(std::string(kHole), sort); }

Term plug(const Term& context, const Term& t) {
  Substitution s;
  s.bind(hole(t.sort()), t);
  return s.apply(context);
}

Term parse_context(std::string_view text, const Signature& sig) {
  constexpr std::string_view placeholder = "__hole__";
  if (sig.find(placeholder)) throw ParseError(1, "signature declares the reserved name __hole__");
  std::string src(text);
  std::size_t at = src.find(kHole);
  if (at == std::string::npos) throw ParseError(1, "context has no hole");
  src.replace(at, kHole.size(), placeholder);
  if (src.find(kHole) != std::string::npos) throw ParseError(1, "context has more than one hole");
  Term c = parse_term(src, sig);
  return rename_vars(c, [&](const std::string& n) { return n == placeholder ? std::string(kHole) : n; });
}

// --- enumeration ----------------------------------------------------------------

namespace {

/// Lexicographic odometer step; false after the last tuple.
bool advance(std::vector<std::size_t>& odo, const std::vector<std::size_t>& limits) {
  for (std::size_t k = odo.size(); k > 0; --k) {
    if (++odo[k - 1] < limits[k - 1]) return true;
    odo[k - 1] = 0;
  }
  return false;
}

/// Ground terms by exact depth and sort, built level by level.
class GroundLevels {
 public:
  explicit GroundLevels(const Signature& sig) : sig_(sig) {}

  const std::vector<Term>& exact(std::size_t d, const Sort& s) {
    while (levels_.size() <= d) build(levels_.size());
    return levels_[d][s.name];
  }

  std::vector<Term> up_to(std::size_t d, const Sort& s) {
    std::vector<Term> out;
    for (std::size_t k = 1; k <= d; ++k) {
      const auto& lv = exact(k, s);
      out.insert(out.end(), lv.begin(), lv.end());
    }
    return out;
  }

 private:
  void build(std::size_t d) {
    levels_.emplace_back();
    if (d == 0) return;
    auto& level = levels_.back();
    for (const auto& f : sig_.symbols()) {
      auto& bucket = level[f->result_sort.name];
      if (f->arity() == 0) {
        if (d == 1) bucket.push_back(Term::apply(f));
        continue;
      }
      if (d == 1) continue;
      std::vector<std::vector<Term>> slots;
      for (const Sort& s : f->arg_sorts) slots.push_back(up_to(d - 1, s));
      if (std::any_of(slots.begin(), slots.end(), [](const auto& v) { return v.empty(); })) continue;
      std::vector<std::size_t> odo(slots.size(), 0);
      std::vector<std::size_t> limits;
      for (const auto& v : slots) limits.push_back(v.size());
      do {
        std::vector<Term> args;
        std::size_t deepest = 0;
        for (std::size_t k = 0; k < slots.size(); ++k) {
          args.push_back(slots[k][odo[k]]);
          deepest = std::max(deepest, args.back().depth());
        }
        if (deepest == d - 1) bucket.push_back(Term::apply(f, std::move(args)));
      } while (advance(odo, limits));
    }
  }

  const Signature& sig_;
  std::vector<std::map<std::string, std::vector<Term>>> levels_;
};

}  // namespace

std::vector<Term> enumerate_ground_terms(const Signature& sig, const Sort& sort, std::size_t depth) {
  GroundLevels levels(sig);
  std::vector<Term> out = levels.up_to(depth, sort);
  if (out.empty()) {
    throw EmptySort("sort " + sort.name + " has no ground term of depth <= " + std::to_string(depth));
  }
  return out;
}

std::vector<Term> enumerate_contexts(const Signature& sig, const Sort& hole_sort, std::size_t depth) {
  GroundLevels ground(sig);
  struct Ctx {
    Term term;
    std::size_t depth;
  };
  std::vector<Ctx> all{{hole(hole_sort), 0}};
  for (std::size_t d = 1; d <= depth; ++d) {
    std::vector<Ctx> fresh;
    for (const auto& f : sig.symbols()) {
      for (std::size_t j = 0; j < f->arity(); ++j) {
        std::vector<const Ctx*> inner;
        for (const Ctx& c : all) {
          if (c.depth <= d - 1 && c.term.sort() == f->arg_sorts[j]) inner.push_back(&c);
        }
        if (inner.empty()) continue;
        std::vector<std::vector<Term>> slots;
        bool empty_slot = false;
        for (std::size_t k = 0; k < f->arity(); ++k) {
          if (k == j) {
            slots.emplace_back();
            continue;
          }
          slots.push_back(ground.up_to(d - 1, f->arg_sorts[k]));
          if (slots.back().empty()) empty_slot = true;
        }
        if (empty_slot) continue;
        std::vector<std::size_t> odo(f->arity(), 0);
        std::vector<std::size_t> limits;
        for (std::size_t k = 0; k < f->arity(); ++k) {
          limits.push_back(k == j ? inner.size() : slots[k].size());
        }
        do {
          std::vector<Term> args;
          std::size_t deepest = 0;
          for (std::size_t k = 0; k < f->arity(); ++k) {
            if (k == j) {
              args.push_back(inner[odo[k]]->term);
              deepest = std::max(deepest, inner[odo[k]]->depth);
            } else {
              args.push_back(slots[k][odo[k]]);
              deepest = std::max(deepest, args.back().depth());
            }
          }
          if (deepest == d - 1) fresh.push_back({Term::apply(f, std::move(args)), d});
        } while (advance(odo, limits));
      }
    }
    all.insert(all.end(), fresh.begin(), fresh.end());
  }
  std::vector<Term> out;
  out.reserve(all.size());
  for (Ctx& c : all) out.push_back(std::move(c.term));
  return out;
}

// --- brute force --------------------------------------------------------------

namespace {

class SevalCache {
 public:
  SevalCache(const Trs& trs, const EnumBounds& b)
      : trs_(trs), sel_{SemanticsKind::Eval, b.max_terms, b.max_edges} {}

  const BoundedSet& get(const Term& t) {
    auto it = cache_.find(t);
    if (it == cache_.end()) it = cache_.emplace(t, bounded_semantics(t, trs_, sel_)).first;
    return it->second;
  }

 private:
  const Trs& trs_;
  SemanticsSelector sel_;
  std::unordered_map<Term, BoundedSet, TermHash> cache_;
};

Term with_arg(const Term& t, std::size_t i, const Term& s) {
  return replace(t, Position{{static_cast<int>(i)}}, s);
}

}  // namespace

Verdict brute_force_redundant(const Trs& trs, std::string_view f, std::size_t i,
                              const EnumBounds& bounds) {
  const Signature& sig = trs.signature();
  SymbolRef sym = sig.find(f);
  if (!sym) throw Error("unknown symbol " + std::string(f));
  if (i < 1 || i > sym->arity()) throw ArityMismatch("argument index out of range for " + sym->name);

  Verdict v;
  v.ctx_depth = bounds.ctx_depth;
  v.term_depth = bounds.term_depth;

  std::vector<Term> terms;
  if (bounds.term_depth >= 2) {
    for (const Term& t : enumerate_ground_terms(sig, sym->result_sort, bounds.term_depth)) {
      if (!t.is_var() && t.name() == sym->name) terms.push_back(t);
    }
  }
  if (terms.empty()) return v;
  std::vector<Term> replacements =
      enumerate_ground_terms(sig, sym->arg_sorts[i - 1], bounds.term_depth - 1);
  std::vector<Term> contexts = enumerate_contexts(sig, sym->result_sort, bounds.ctx_depth);

  SevalCache seval(trs, bounds);
  for (const Term& c : contexts) {
    for (const Term& t : terms) {
      const BoundedSet& before = seval.get(plug(c, t));
      for (const Term& s : replacements) {
        if (s == t.arg(i)) continue;
        if (v.cases_checked + v.skipped_truncated >= bounds.max_cases) {
          v.case_limit_hit = true;
          return v;
        }
        const BoundedSet& after = seval.get(plug(c, with_arg(t, i, s)));
        if (before.truncated || after.truncated) {
          ++v.skipped_truncated;
          continue;
        }
        ++v.cases_checked;
        if (before.terms != after.terms) {
          v.counterexample = Counterexample{c, t, s, before.terms, after.terms};
          return v;
        }
      }
    }
  }
  return v;
}

bool replay(const Trs& trs, std::size_t i, const Counterexample& cx, const EnumBounds& bounds) {
  SevalCache seval(trs, bounds);
  BoundedSet before = seval.get(plug(cx.context, cx.term));
  BoundedSet after = seval.get(plug(cx.context, with_arg(cx.term, i, cx.replacement)));
  return !before.truncated && !after.truncated && before.terms != after.terms &&
         before.terms == cx.before && after.terms == cx.after;
}

// --- differential verification ------------------------------------------------------

namespace {

/// Smallest depth of a ground term per sort; absent sorts have none.
std::map<std::string, std::size_t> min_depths(const Signature& sig) {
  std::map<std::string, std::size_t> out;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& f : sig.symbols()) {
      std::size_t d = 1;
      bool ok = true;
      for (const Sort& s : f->arg_sorts) {
        auto it = out.find(s.name);
        if (it == out.end()) {
          ok = false;
          break;
        }
        d = std::max(d, it->second + 1);
      }
      if (!ok) continue;
      auto it = out.find(f->result_sort.name);
      if (it == out.end() || d < it->second) {
        out[f->result_sort.name] = d;
        changed = true;
      }
    }
  }
  return out;
}

std::size_t symbol_min_depth(const FuncSymbol& f, const std::map<std::string, std::size_t>& md) {
  std::size_t d = 1;
  for (const Sort& s : f.arg_sorts) {
    auto it = md.find(s.name);
    if (it == md.end()) return SIZE_MAX;
    d = std::max(d, it->second + 1);
  }
  return d;
}

std::size_t pick(std::size_t n, std::mt19937_64& rng) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

Term random_from(const Signature& sig, const FuncSymbol& f, std::size_t depth,
                 const std::map<std::string, std::size_t>& md, std::mt19937_64& rng);

Term random_of_sort(const Signature& sig, const Sort& sort, std::size_t depth,
                    const std::map<std::string, std::size_t>& md, std::mt19937_64& rng) {
  std::vector<SymbolRef> fits;
  for (const auto& f : sig.symbols_of_sort(sort)) {
    if (symbol_min_depth(*f, md) <= depth) fits.push_back(f);
  }
  if (fits.empty()) {
    throw EmptySort("sort " + sort.name + " has no ground term of depth <= " + std::to_string(depth));
  }
  return random_from(sig, *fits[pick(fits.size(), rng)], depth, md, rng);
}

Term random_from(const Signature& sig, const FuncSymbol& f, std::size_t depth,
                 const std::map<std::string, std::size_t>& md, std::mt19937_64& rng) {
  std::vector<Term> args;
  for (const Sort& s : f.arg_sorts) args.push_back(random_of_sort(sig, s, depth - 1, md, rng));
  return Term::apply(sig.at(f.name), std::move(args));
}

std::string describe(const EvalOutcome& o) {
  std::string s = to_string(o.kind) + " " + o.term.to_string() + " (" + std::to_string(o.steps) + " steps)";
  return s;
}

}  // namespace

Term random_ground_term(const Signature& sig, const Sort& sort, std::size_t depth,
                        std::mt19937_64& rng) {
  return random_of_sort(sig, sort, depth, min_depths(sig), rng);
}

DiffReport differential_verify(const Trs& trs, const SyntacticErasure& rho, std::size_t trials,
                               std::size_t depth, std::uint64_t seed, std::size_t fuel) {
  DiffReport rep;
  rep.trials = trials;
  rep.depth = depth;
  rep.seed = seed;

  const Signature& sig = trs.signature();
  Eraser eraser(sig, rho);
  Trs erased = without_trivial_rules(erase_trs(trs, rho).trs);

  auto md = min_depths(sig);
  std::vector<SymbolRef> roots;
  for (const auto& f : sig.symbols()) {
    if (symbol_min_depth(*f, md) <= depth) roots.push_back(f);
  }
  if (roots.empty() || trials == 0) return rep;

  std::mt19937_64 rng(seed);
  for (std::size_t k = 0; k < trials; ++k) {
    const FuncSymbol& root = *roots[pick(roots.size(), rng)];
    Term t = random_from(sig, root, depth, md, rng);
    Term te = eraser.erase(t);
    EvalOutcome a = eval(t, trs, fuel);
    EvalOutcome b = eval(te, erased, fuel);
    if (!a.reached_normal_form() || !b.reached_normal_form()) {
      ++rep.indeterminate;
      continue;
    }
    bool a_val = a.kind == EvalOutcome::Kind::Value;
    bool b_val = b.kind == EvalOutcome::Kind::Value;
    bool same = a_val == b_val && (!a_val || eraser.erase(a.term) == b.term);
    if (same) {
      ++rep.agree;
    } else {
      ++rep.disagree;
      rep.disagreements.push_back({t, te, a, b});
    }
  }
  return rep;
}

std::string DiffReport::to_string() const {
  std::ostringstream out;
  out << "trials " << trials << ", depth " << depth << ", seed " << seed << '\n';
  out << "agree " << agree << ", disagree " << disagree << ", indeterminate " << indeterminate
      << '\n';
  for (const DiffCase& c : disagreements) {
    out << "witness " << c.input.to_string() << ": original " << describe(c.original)
        << "; erased " << c.erased_input.to_string() << ": " << describe(c.erased) << '\n';
  }
  return out.str();
}

}  // namespace redarg

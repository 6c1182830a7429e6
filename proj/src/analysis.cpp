#include "redarg/analysis.hpp"

#include <algorithm>
#include <random>

#include "redarg/errors.hpp"

namespace redarg {

std::string to_string(Method m) {
  return m == Method::VariableCase ? "variable-case" : "pattern-case";
}

// --- RedundancySet ----------------------------------------------------------

RedundancySet RedundancySet::from_indices(const std::map<std::string, std::set<std::size_t>>& m) {
  RedundancySet out;
  for (const auto& [f, idx] : m) {
    for (std::size_t i : idx) out.add(f, i, {});
  }
  return out;
}

void RedundancySet::add(const std::string& f, std::size_t i, Justification why) {
  entries_[f].insert_or_assign(i, std::move(why));
}

bool RedundancySet::contains(std::string_view f, std::size_t i) const {
  auto it = entries_.find(std::string(f));
  return it != entries_.end() && it->second.contains(i);
}

std::set<std::size_t> RedundancySet::indices(std::string_view f) const {
  std::set<std::size_t> out;
  if (auto it = entries_.find(std::string(f)); it != entries_.end()) {
    for (const auto& [i, _] : it->second) out.insert(i);
  }
  return out;
}

std::map<std::string, std::set<std::size_t>> RedundancySet::index_map() const {
  std::map<std::string, std::set<std::size_t>> out;
  for (const auto& [f, _] : entries_) out[f] = indices(f);
  return out;
}

std::size_t RedundancySet::total() const {
  std::size_t n = 0;
  for (const auto& [_, m] : entries_) n += m.size();
  return n;
}

// --- positions and variables --------------------------------------------------

std::vector<Position> redundant_positions(const Term& t, const RedundancySet& known) {
  std::vector<Position> out;
  if (known.empty()) return out;
  std::vector<Position> all = positions(t);
  std::vector<Position> roots;  // q.i with i in known(root(t|_q))
  for (const Position& q : all) {
    Term sub = subterm(t, q);
    if (sub.is_var()) continue;
    for (std::size_t i : known.indices(sub.name())) {
      if (i <= sub.arity()) roots.push_back(q.child(static_cast<int>(i)));
    }
  }
  for (const Position& p : all) {
    if (std::any_of(roots.begin(), roots.end(), [&](const Position& r) { return r.is_prefix_of(p); })) {
      out.push_back(p);
    }
  }
  return out;
}

bool is_fi_redundant_var(std::string_view x, const Term& r, std::string_view f, std::size_t i,
                         const RedundancySet& known) {
  std::vector<Position> occ = var_positions(r, x);
  if (occ.empty()) return true;
  std::vector<Position> rpos = redundant_positions(r, known);
  std::vector<Position> fi = pos_fi(r, f, i);
  return std::all_of(occ.begin(), occ.end(), [&](const Position& p) {
    bool redundant = std::binary_search(rpos.begin(), rpos.end(), p);
    bool under_fi =
        std::any_of(fi.begin(), fi.end(), [&](const Position& qi) { return qi.is_prefix_of(p); });
    return redundant || under_fi;
  });
}

// --- Variable Case ------------------------------------------------------------

namespace {

void require_ll_cs(const Trs& trs) {
  if (auto w = check_left_linear(trs)) {
    throw PreconditionUnmet("LL", "rule " + std::to_string(w->rule + 1) + " repeats " + w->variable);
  }
  if (auto w = check_constructor_system(trs)) {
    throw PreconditionUnmet("CS", "rule " + std::to_string(w->rule + 1) + ": " + w->reason);
  }
}

bool variable_case_unchecked(const Trs& trs, std::string_view f, std::size_t i,
                             const RedundancySet& known) {
  const auto& idx = trs.rules_of(f);
  if (idx.empty()) return false;
  for (std::size_t k : idx) {
    const Rule& rule = trs.rules()[k];
    if (i < 1 || i > rule.lhs.arity()) throw ArityMismatch("argument index out of range");
    const Term& arg = rule.lhs.arg(i);
    if (!arg.is_var()) return false;
    if (!is_fi_redundant_var(arg.name(), rule.rhs, f, i, known)) return false;
  }
  return true;
}

}  // namespace

bool variable_case(const Trs& trs, std::string_view f, std::size_t i, const RedundancySet& known) {
  require_ll_cs(trs);
  return variable_case_unchecked(trs, f, i, known);
}

// --- Pattern Case -------------------------------------------------------------

std::vector<FITriple> fi_triples(const Trs& trs, std::string_view f, std::size_t i) {
  std::vector<FITriple> out;
  const auto& idx = trs.rules_of(f);
  for (std::size_t a = 0; a < idx.size(); ++a) {
    for (std::size_t b = a + 1; b < idx.size(); ++b) {
      const Rule& first = trs.rules()[idx[a]];
      Rule second = rename_apart(trs.rules()[idx[b]], vars(first.lhs));
      if (auto sigma = unify_up_to_arg(first.lhs, second.lhs, i)) {
        out.push_back({idx[a], idx[b], first, std::move(second), std::move(*sigma), std::string(f), i});
      }
    }
  }
  return out;
}

Term tau_transform(const Term& r, const Term& l, std::string_view f, std::size_t i,
                   const Signature& sig) {
  const Term& li = l.arg(i);
  if (li.is_var()) return r;
  std::vector<Term> lvars = vars(li);
  std::vector<Position> q;
  for (const Position& p : pos_fi(r, f, i)) {
    Term sub = subterm(r, p);
    bool shares = std::any_of(lvars.begin(), lvars.end(),
                              [&](const Term& v) { return occurs(v.name(), sub); });
    if (shares) q.push_back(p);
  }
  Term out = r;
  for (const Position& p : q) {
    bool minimal = std::none_of(q.begin(), q.end(),
                                [&](const Position& o) { return o.is_strict_prefix_of(p); });
    if (minimal) out = replace(out, p, sig.constant_for(subterm(out, p).sort()));
  }
  return out;
}

Substitution sigma_c(const FITriple& triple, const Signature& sig) {
  Substitution out = triple.sigma;
  for (const Term* arg : {&triple.first.lhs.arg(triple.i), &triple.second.lhs.arg(triple.i)}) {
    for (const Term& x : vars(*arg)) out.bind(x, sig.constant_for(x.sort()));
  }
  return out;
}

namespace {

void require_pattern_gates(const PropertyReport& props) {
  if (!props.left_linear) throw PreconditionUnmet("LL", "TRS is not left-linear");
  if (!props.constructor_system) throw PreconditionUnmet("CS", "TRS is not a constructor system");
  Confluence c = props.confluence.verdict;
  if (c != Confluence::YesOrthogonal && c != Confluence::YesKnuthBendix) {
    throw PreconditionUnmet("C", "confluence = " + to_string(c));
  }
  if (!props.seval_defined) throw PreconditionUnmet("ED", props.seval_failure + " fails");
}

}  // namespace

PatternCaseResult pattern_case(const Trs& trs, const PropertyReport& props, std::string_view f,
                               std::size_t i, const RedundancySet& known, std::size_t fuel,
                               Strategy strategy) {
  require_pattern_gates(props);
  PatternCaseResult out;
  const auto& idx = trs.rules_of(f);
  if (idx.empty()) {
    out.reason = std::string(f) + " has no rules";
    return out;
  }
  for (std::size_t k : idx) {
    const Rule& rule = trs.rules()[k];
    if (i < 1 || i > rule.lhs.arity()) throw ArityMismatch("argument index out of range");
    for (const Term& x : vars(rule.lhs.arg(i))) {
      if (!is_fi_redundant_var(x.name(), rule.rhs, f, i, known)) {
        out.reason = "variable " + x.name() + " of rule " + std::to_string(k + 1) +
                     " is not (" + std::string(f) + "," + std::to_string(i) + ")-redundant in its rhs";
        return out;
      }
    }
  }
  const Signature& sig = trs.signature();
  bool indeterminate = false;
  for (const FITriple& t : fi_triples(trs, f, i)) {
    Substitution sc = sigma_c(t, sig);
    TripleCheck check{t.rule1,
                      t.rule2,
                      t.sigma,
                      sc,
                      sc.apply(tau_transform(t.first.rhs, t.first.lhs, f, i, sig)),
                      sc.apply(tau_transform(t.second.rhs, t.second.lhs, f, i, sig)),
                      std::nullopt,
                      std::nullopt,
                      Tri::Indeterminate};
    EvalOutcome a = normalize(check.left, trs, strategy, fuel);
    EvalOutcome b = normalize(check.right, trs, strategy, fuel);
    if (a.reached_normal_form()) check.left_nf = a.term;
    if (b.reached_normal_form()) check.right_nf = b.term;
    if (!check.left_nf || !check.right_nf) {
      check.joinable = Tri::Indeterminate;
      indeterminate = true;
    } else {
      check.joinable = *check.left_nf == *check.right_nf ? Tri::True : Tri::False;
    }
    out.triples.push_back(check);
    if (check.joinable == Tri::False) {
      out.reason = "triple (rule " + std::to_string(t.rule1 + 1) + ", rule " +
                   std::to_string(t.rule2 + 1) + ") is not joinable";
      out.verdict = Tri::False;
      return out;
    }
  }
  if (indeterminate) {
    out.verdict = Tri::Indeterminate;
    out.reason = "fuel exhausted while joining a triple";
    return out;
  }
  out.verdict = Tri::True;
  return out;
}

PatternCaseResult pattern_case(const Trs& trs, std::string_view f, std::size_t i,
                               const RedundancySet& known, std::size_t fuel) {
  return pattern_case(trs, check_properties(trs, fuel), f, i, known, fuel);
}

// --- fixpoint -----------------------------------------------------------------

namespace {

std::string describe_pattern_gate(const PropertyReport& props) {
  if (!props.left_linear) return "not left-linear";
  if (!props.constructor_system) return "not a constructor system";
  const ConfluenceResult& c = props.confluence;
  if (c.verdict != Confluence::YesOrthogonal && c.verdict != Confluence::YesKnuthBendix) {
    std::string s = "confluence = " + to_string(c.verdict);
    if (c.witness) s += " (critical pair <" + c.witness->left.to_string() + ", " + c.witness->right.to_string() + ">)";
    return s;
  }
  if (!props.seval_defined) {
    std::string s = "not Seval-defined: " + props.seval_failure + " fails";
    if (props.completely_defined && !props.completely_defined->complete) {
      std::string list;
      for (const auto& [f, pats] : props.completely_defined->uncovered) {
        for (const Term& p : pats) list += (list.empty() ? "" : ", ") + p.to_string();
      }
      s += " (uncovered " + list + ")";
    }
    return s;
  }
  return {};
}

}  // namespace

AnalysisResult analyze(const Trs& trs, const AnalysisConfig& cfg) {
  AnalysisResult out;
  out.properties = check_properties(trs, cfg.fuel);
  const PropertyReport& props = out.properties;

  bool ll_cs = props.left_linear && props.constructor_system;
  out.variable_case_enabled = cfg.variable_case && ll_cs;
  if (cfg.variable_case && !ll_cs) {
    out.notes.push_back(std::string("variable case disabled: ") +
                        (props.left_linear ? "not a constructor system" : "not left-linear"));
  }
  std::string gate = describe_pattern_gate(props);
  out.pattern_case_enabled = cfg.pattern_case && gate.empty();
  if (cfg.pattern_case && !gate.empty()) out.notes.push_back("pattern case disabled: " + gate);

  std::vector<std::pair<std::string, std::size_t>> candidates;
  for (const auto& f : trs.signature().defined_symbols()) {
    for (std::size_t i = 1; i <= f->arity(); ++i) candidates.emplace_back(f->name, i);
  }
  if (cfg.shuffle_seed) {
    std::mt19937_64 rng(*cfg.shuffle_seed);
    std::shuffle(candidates.begin(), candidates.end(), rng);
  }

  std::map<std::pair<std::string, std::size_t>, UnresolvedCandidate> unresolved;
  for (int round = 1; round <= cfg.max_rounds; ++round) {
    out.rounds = round;
    const RedundancySet& known = out.redundant;
    std::vector<std::tuple<std::string, std::size_t, Justification>> found;
    for (const auto& [f, i] : candidates) {
      if (known.contains(f, i)) continue;
      if (out.variable_case_enabled && variable_case_unchecked(trs, f, i, known)) {
        found.emplace_back(f, i, Justification{Method::VariableCase, round, {}});
        continue;
      }
      if (!out.pattern_case_enabled) continue;
      PatternCaseResult pc = pattern_case(trs, props, f, i, known, cfg.fuel, cfg.strategy);
      if (pc.verdict == Tri::True) {
        found.emplace_back(f, i, Justification{Method::PatternCase, round, std::move(pc.triples)});
      } else if (pc.verdict == Tri::Indeterminate) {
        unresolved[{f, i}] = {f, i, round, pc.reason};
      }
    }
    if (found.empty()) break;
    for (auto& [f, i, why] : found) {
      unresolved.erase({f, i});
      out.redundant.add(f, i, std::move(why));
    }
  }
  for (auto& [_, u] : unresolved) out.unknown.push_back(std::move(u));
  return out;
}

}  // namespace redarg

#include "redarg/rewrite.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <unordered_map>

#include "redarg/errors.hpp"

namespace redarg {

namespace {

std::atomic<std::uint64_t> g_steps{0};

std::optional<Step> root_step(const Term& t, const Trs& trs) {
  if (t.is_var()) return std::nullopt;
  for (std::size_t idx : trs.rules_of(t.name())) {
    const Rule& r = trs.rules()[idx];
    if (auto sigma = match(r.lhs, t)) return Step{sigma->apply(r.rhs), Position::root(), idx};
  }
  return std::nullopt;
}

Term plug(const Term& t, std::size_t k, Term replacement) {
  std::vector<Term> args(t.args().begin(), t.args().end());
  args[k] = std::move(replacement);
  return Term::apply(t.symbol_ref(), std::move(args));
}

// Every lhs is rooted by a defined symbol, so constructor-only terms hold no redex.
bool redex_free(const Term& t) { return t.is_var() || t.is_constructor_term(); }

std::optional<Step> innermost(const Term& t, const Trs& trs) {
  if (redex_free(t)) return std::nullopt;
  for (std::size_t k = 0; k < t.arity(); ++k) {
    if (auto s = innermost(t.args()[k], trs)) {
      s->position.path.insert(s->position.path.begin(), static_cast<int>(k + 1));
      s->result = plug(t, k, std::move(s->result));
      return s;
    }
  }
  return root_step(t, trs);
}

std::optional<Step> outermost(const Term& t, const Trs& trs) {
  if (redex_free(t)) return std::nullopt;
  if (auto s = root_step(t, trs)) return s;
  for (std::size_t k = 0; k < t.arity(); ++k) {
    if (auto s = outermost(t.args()[k], trs)) {
      s->position.path.insert(s->position.path.begin(), static_cast<int>(k + 1));
      s->result = plug(t, k, std::move(s->result));
      return s;
    }
  }
  return std::nullopt;
}

void all_reducts(const Term& t, const Trs& trs, std::vector<Step>& out) {
  if (redex_free(t)) return;
  for (std::size_t idx : trs.rules_of(t.name())) {
    const Rule& r = trs.rules()[idx];
    if (auto sigma = match(r.lhs, t)) out.push_back({sigma->apply(r.rhs), Position::root(), idx});
  }
  for (std::size_t k = 0; k < t.arity(); ++k) {
    std::vector<Step> inner;
    all_reducts(t.args()[k], trs, inner);
    for (Step& s : inner) {
      s.position.path.insert(s.position.path.begin(), static_cast<int>(k + 1));
      s.result = plug(t, k, std::move(s.result));
      out.push_back(std::move(s));
    }
  }
}

}  // namespace

std::string to_string(Strategy s) {
  return s == Strategy::LeftmostInnermost ? "innermost" : "outermost";
}

std::optional<Strategy> parse_strategy(std::string_view name) {
  if (name == "innermost" || name == "leftmost-innermost") return Strategy::LeftmostInnermost;
  if (name == "outermost" || name == "leftmost-outermost") return Strategy::LeftmostOutermost;
  return std::nullopt;
}

std::string to_string(Tri t) {
  switch (t) {
    case Tri::True: return "true";
    case Tri::False: return "false";
    case Tri::Indeterminate: return "indeterminate";
  }
  return "?";
}

std::string to_string(EvalOutcome::Kind k) {
  switch (k) {
    case EvalOutcome::Kind::Value: return "value";
    case EvalOutcome::Kind::NormalForm: return "normal-form";
    case EvalOutcome::Kind::FuelExhausted: return "fuel-exhausted";
  }
  return "?";
}

std::string to_string(SemanticsKind k) {
  switch (k) {
    case SemanticsKind::Empty: return "Sempty";
    case SemanticsKind::Eval: return "Seval";
    case SemanticsKind::Nf: return "Snf";
    case SemanticsKind::Hnf: return "Shnf";
    case SemanticsKind::Red: return "Sred";
  }
  return "?";
}

namespace {

std::optional<Step> step_adopted(const Term& t, const Trs& trs, Strategy strategy) {
  auto s = strategy == Strategy::LeftmostInnermost ? innermost(t, trs) : outermost(t, trs);
  if (s) g_steps.fetch_add(1, std::memory_order_relaxed);
  return s;
}

bool normal_adopted(const Term& t, const Trs& trs) {
  if (redex_free(t)) return true;
  if (root_step(t, trs)) return false;
  return std::all_of(t.args().begin(), t.args().end(),
                     [&](const Term& a) { return normal_adopted(a, trs); });
}

}  // namespace

std::optional<Step> rewrite_step(const Term& t, const Trs& trs, Strategy strategy) {
  return step_adopted(trs.adopt(t), trs, strategy);
}

bool has_root_redex(const Term& t, const Trs& trs) { return root_step(t, trs).has_value(); }

bool is_normal_form(const Term& t, const Trs& trs) { return normal_adopted(trs.adopt(t), trs); }

std::vector<Step> one_step_reducts(const Term& t, const Trs& trs) {
  std::vector<Step> out;
  all_reducts(trs.adopt(t), trs, out);
  return out;
}

EvalOutcome normalize(const Term& t, const Trs& trs, Strategy strategy, std::size_t fuel,
                      std::vector<Step>* trace) {
  Term cur = trs.adopt(t);
  std::size_t steps = 0;
  while (true) {
    if (steps == fuel) {
      if (!step_adopted(cur, trs, strategy)) break;
      return {EvalOutcome::Kind::FuelExhausted, cur, steps};
    }
    auto s = step_adopted(cur, trs, strategy);
    if (!s) break;
    if (trace) trace->push_back(*s);
    cur = std::move(s->result);
    ++steps;
  }
  return {EvalOutcome::Kind::NormalForm, cur, steps};
}

Tri joinable(const Term& t, const Term& s, const Trs& trs, std::size_t fuel, Strategy strategy) {
  EvalOutcome a = normalize(t, trs, strategy, fuel);
  EvalOutcome b = normalize(s, trs, strategy, fuel);
  if (!a.reached_normal_form() || !b.reached_normal_form()) return Tri::Indeterminate;
  return a.term == b.term ? Tri::True : Tri::False;
}

EvalOutcome eval(const Term& t, const Trs& trs, std::size_t fuel, Strategy strategy) {
  if (!t.is_ground()) throw Error("eval needs a ground term, got " + t.to_string());
  EvalOutcome out = normalize(t, trs, strategy, fuel);
  if (out.kind == EvalOutcome::Kind::NormalForm && out.term.is_constructor_term()) {
    out.kind = EvalOutcome::Kind::Value;
  }
  return out;
}

BoundedSet bounded_semantics(const Term& t, const Trs& trs, const SemanticsSelector& sel) {
  BoundedSet out;
  if (sel.kind == SemanticsKind::Empty) return out;

  std::vector<Term> nodes;
  std::unordered_map<Term, std::size_t, TermHash> id;
  std::vector<std::vector<std::size_t>> succ;
  std::deque<std::size_t> queue;
  std::size_t edges = 0;

  auto intern = [&](const Term& u) -> std::optional<std::size_t> {
    if (auto it = id.find(u); it != id.end()) return it->second;
    if (nodes.size() >= sel.max_terms) return std::nullopt;
    id.emplace(u, nodes.size());
    nodes.push_back(u);
    succ.emplace_back();
    queue.push_back(nodes.size() - 1);
    return nodes.size() - 1;
  };

  intern(trs.adopt(t));
  while (!queue.empty() && !out.truncated) {
    std::size_t n = queue.front();
    queue.pop_front();
    std::vector<Step> reducts;
    all_reducts(nodes[n], trs, reducts);
    for (const Step& s : reducts) {
      if (++edges > sel.max_edges) {
        out.truncated = true;
        break;
      }
      auto m = intern(s.result);
      if (!m) {
        out.truncated = true;
        break;
      }
      succ[n].push_back(*m);
    }
  }
  if (!queue.empty()) out.truncated = true;

  std::vector<bool> keep(nodes.size(), false);
  switch (sel.kind) {
    case SemanticsKind::Empty:
      break;
    case SemanticsKind::Red:
      std::fill(keep.begin(), keep.end(), true);
      break;
    case SemanticsKind::Eval:
      for (std::size_t k = 0; k < nodes.size(); ++k) {
        keep[k] = nodes[k].is_ground() && nodes[k].is_constructor_term();
      }
      break;
    case SemanticsKind::Nf:
      for (std::size_t k = 0; k < nodes.size(); ++k) keep[k] = normal_adopted(nodes[k], trs);
      break;
    case SemanticsKind::Hnf: {
      // reaches_redex[k]: some node reachable from k (k included) has a root redex.
      std::vector<bool> reaches(nodes.size(), false);
      std::vector<std::vector<std::size_t>> pred(nodes.size());
      std::deque<std::size_t> work;
      for (std::size_t k = 0; k < nodes.size(); ++k) {
        for (std::size_t m : succ[k]) pred[m].push_back(k);
        if (has_root_redex(nodes[k], trs)) {
          reaches[k] = true;
          work.push_back(k);
        }
      }
      while (!work.empty()) {
        std::size_t m = work.front();
        work.pop_front();
        for (std::size_t p : pred[m]) {
          if (!reaches[p]) {
            reaches[p] = true;
            work.push_back(p);
          }
        }
      }
      for (std::size_t k = 0; k < nodes.size(); ++k) keep[k] = !reaches[k];
      break;
    }
  }
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    if (keep[k]) out.terms.push_back(nodes[k]);
  }
  std::sort(out.terms.begin(), out.terms.end());
  return out;
}

std::uint64_t rewrite_steps_performed() { return g_steps.load(std::memory_order_relaxed); }

std::string format_trace_line(const Term& before, const Step& step, const Trs& trs) {
  return step.position.to_string() + ": " + before.to_string() + " -> " +
         step.result.to_string() + " [" + trs.rule_label(step.rule) + "]";
}

}  // namespace redarg

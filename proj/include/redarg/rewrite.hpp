#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "redarg/term.hpp"
#include "redarg/trs.hpp"

namespace redarg {

inline constexpr std::size_t kDefaultFuel = 10000;
inline constexpr std::size_t kDefaultMaxTerms = 5000;
inline constexpr std::size_t kDefaultMaxEdges = 20000;

enum class Strategy { LeftmostInnermost, LeftmostOutermost };
std::string to_string(Strategy s);
std::optional<Strategy> parse_strategy(std::string_view name);

/// Three-valued answer; Indeterminate means a bound was hit.
enum class Tri { False, True, Indeterminate };
std::string to_string(Tri t);

struct Step {
  Term result;
  Position position;
  std::size_t rule = 0;  // 0-based index into Trs::rules()
};

/// Unique step selected by the strategy's position order and rule file order.
std::optional<Step> rewrite_step(const Term& t, const Trs& trs, Strategy strategy);
/// True when no rule applies at any position.
bool is_normal_form(const Term& t, const Trs& trs);
/// True when some rule applies at the root.
bool has_root_redex(const Term& t, const Trs& trs);
/// All one-step reducts (every position, every rule), positions in pre-order.
std::vector<Step> one_step_reducts(const Term& t, const Trs& trs);

struct EvalOutcome {
  enum class Kind { Value, NormalForm, FuelExhausted };
  Kind kind = Kind::NormalForm;
  Term term;
  std::size_t steps = 0;

  bool reached_normal_form() const { return kind != Kind::FuelExhausted; }
};
std::string to_string(EvalOutcome::Kind k);

/// Rewrites `t` to a normal form or until `fuel` steps were taken. When
/// `trace` is given, every step is appended to it.
EvalOutcome normalize(const Term& t, const Trs& trs, Strategy strategy, std::size_t fuel,
                      std::vector<Step>* trace = nullptr);

/// Both sides normalize and the normal forms are syntactically equal.
Tri joinable(const Term& t, const Term& s, const Trs& trs, std::size_t fuel,
             Strategy strategy = Strategy::LeftmostInnermost);

/// Normalizes a ground term; Value iff the normal form is constructor-only.
/// Throws Error when `t` is not ground.
EvalOutcome eval(const Term& t, const Trs& trs, std::size_t fuel,
                 Strategy strategy = Strategy::LeftmostInnermost);

enum class SemanticsKind { Empty, Eval, Nf, Hnf, Red };
std::string to_string(SemanticsKind k);

struct SemanticsSelector {
  SemanticsKind kind = SemanticsKind::Eval;
  std::size_t max_terms = kDefaultMaxTerms;
  std::size_t max_edges = kDefaultMaxEdges;
};

struct BoundedSet {
  std::vector<Term> terms;  // sorted by Term ordering
  bool truncated = false;
};

/// Breadth-first closure of the rewrite relation from `t`, filtered per
/// selector. The head-normal-form set is a bounded approximation: a term is
/// kept when nothing reachable from it inside the explored graph has a root redex.
BoundedSet bounded_semantics(const Term& t, const Trs& trs, const SemanticsSelector& sel);

/// Total number of rewrite steps performed by this process (instrumentation).
std::uint64_t rewrite_steps_performed();

std::string format_trace_line(const Term& before, const Step& step, const Trs& trs);

}  // namespace redarg

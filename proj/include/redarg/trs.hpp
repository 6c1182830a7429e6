#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "redarg/term.hpp"

namespace redarg {

/// Sorts and function symbols in declaration order.
class Signature {
 public:
  void add_sort(const Sort& sort);
  /// Replaces an existing symbol of the same name.
  void add_symbol(const FuncSymbol& symbol);

  const std::vector<Sort>& sorts() const { return sorts_; }
  const std::vector<SymbolRef>& symbols() const { return symbols_; }
  bool has_sort(std::string_view name) const;
  SymbolRef find(std::string_view name) const;
  const SymbolRef& at(std::string_view name) const;
  std::vector<SymbolRef> symbols_of_sort(const Sort& sort) const;
  std::vector<SymbolRef> constructors_of(const Sort& sort) const;
  std::vector<SymbolRef> defined_symbols() const;
  /// Position of the symbol in declaration order.
  std::size_t index_of(std::string_view name) const;

  /// The per-sort constant `a`: the first declared nullary constructor of the
  /// sort, else the smallest ground constructor term by (depth, declaration order).
  std::optional<Term> designated_constant(const Sort& sort) const;
  /// Throws NoGroundConstant.
  Term constant_for(const Sort& sort) const;

 private:
  std::vector<Sort> sorts_;
  std::vector<SymbolRef> symbols_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

struct Rule {
  Term lhs;
  Term rhs;
  std::optional<std::string> label;

  bool trivial() const { return lhs == rhs; }
  std::string to_string() const { return lhs.to_string() + " -> " + rhs.to_string(); }
  friend bool operator==(const Rule& a, const Rule& b) { return a.lhs == b.lhs && a.rhs == b.rhs; }
};

/// A many-sorted TRS. Symbol kinds are derived from the rules: a symbol is
/// defined iff it roots some left-hand side.
class Trs {
 public:
  Trs() = default;
  /// Validates the rules and reclassifies symbol kinds. Throws WellFormednessError.
  Trs(Signature signature, std::vector<Rule> rules, bool terminating_attested = false);

  const Signature& signature() const { return sig_; }
  const std::vector<Rule>& rules() const { return rules_; }
  bool terminating_attested() const { return terminating_; }
  /// Indices (0-based, file order) of the rules whose lhs is rooted by `f`.
  const std::vector<std::size_t>& rules_of(std::string_view f) const;
  std::string rule_label(std::size_t index) const;

  /// Rebinds the symbols of `t` to this signature so that symbol kinds match
  /// the rules. Returns `t` itself when it already uses this signature.
  /// Throws WellFormednessError for unknown symbols.
  Term adopt(const Term& t) const;

  Trs with_rules(std::vector<Rule> rules) const;
  Trs with_termination(bool attested) const;

 private:
  Signature sig_;
  std::vector<Rule> rules_;
  bool terminating_ = false;
  std::map<std::string, std::vector<std::size_t>, std::less<>> by_root_;
};

/// Parses the line-oriented `.trs` format. Throws ParseError or WellFormednessError.
Trs parse_trs(std::string_view text);
/// Parses a term over `sig`; identifiers not declared in `sig` become variables
/// whose sorts are inferred from their position.
Term parse_term(std::string_view text, const Signature& sig);
/// Parses `lhs -> rhs` over `sig`.
Rule parse_rule(std::string_view text, const Signature& sig);
std::string format_trs(const Trs& trs);

/// Renames the variables of `rule` apart from `avoid` by appending primes.
Rule rename_apart(const Rule& rule, const std::vector<Term>& avoid);

// --- structural property checks ----------------------------------------------

struct LinearityWitness {
  std::size_t rule = 0;  // 0-based
  std::string variable;
};

struct ConstructorWitness {
  std::size_t rule = 0;  // 0-based
  std::string reason;
};

struct CriticalPair {
  Term left;
  Term right;
  bool overlay = false;
  bool trivial = false;
  std::size_t outer_rule = 0;
  std::size_t inner_rule = 0;
  Position position;
};

enum class Confluence { YesOrthogonal, YesKnuthBendix, No, Unknown };
std::string to_string(Confluence c);

struct ConfluenceResult {
  Confluence verdict = Confluence::Unknown;
  std::optional<CriticalPair> witness;
  std::string detail;
};

struct CompletenessResult {
  bool complete = true;
  /// Uncovered f-rooted constructor patterns per defined symbol.
  std::map<std::string, std::vector<Term>> uncovered;
};

struct PropertyReport {
  bool left_linear = true;
  std::optional<LinearityWitness> left_linear_witness;
  bool constructor_system = true;
  std::optional<ConstructorWitness> constructor_witness;
  /// Absent when the TRS is not a constructor system.
  std::optional<CompletenessResult> completely_defined;
  ConfluenceResult confluence;
  bool seval_defined = false;
  std::string seval_failure;
  bool terminating_attested = false;

  bool completely_defined_holds() const {
    return completely_defined && completely_defined->complete;
  }
};

std::optional<LinearityWitness> check_left_linear(const Trs& trs);
std::optional<ConstructorWitness> check_constructor_system(const Trs& trs);
std::vector<CriticalPair> critical_pairs(const Trs& trs);
ConfluenceResult check_confluence(const Trs& trs, std::size_t fuel);
/// Throws NotAConstructorSystem.
CompletenessResult check_completely_defined(const Trs& trs);

struct SevalDefinedness {
  bool holds = false;
  /// Names the failing conjunct when `holds` is false.
  std::string failing;
};
/// Completely defined and terminating (attested); unattested counts as false.
SevalDefinedness check_seval_defined(const Trs& trs);
PropertyReport check_properties(const Trs& trs, std::size_t fuel);

}  // namespace redarg

#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "redarg/analysis.hpp"
#include "redarg/rewrite.hpp"
#include "redarg/term.hpp"
#include "redarg/trs.hpp"

namespace redarg {

/// Argument indices (1-based) to delete, per symbol. Symbols without an
/// entry keep all their arguments.
class SyntacticErasure {
 public:
  SyntacticErasure() = default;
  using Map = std::map<std::string, std::set<std::size_t>, std::less<>>;

  explicit SyntacticErasure(const std::map<std::string, std::set<std::size_t>>& rho);

  const std::set<std::size_t>& of(std::string_view f) const;
  bool identity() const;
  const Map& entries() const { return rho_; }

  /// Throws ArityMismatch when an index is outside 1..ar(f) or a symbol is unknown.
  void validate(const Signature& sig) const;

 private:
  Map rho_;
};

SyntacticErasure erasure_from_analysis(const RedundancySet& red, const Signature& sig);

/// Applies a syntactic erasure to symbols and terms.
class Eraser {
 public:
  /// Defined symbols are renamed to name + suffix; constructors keep their names.
  Eraser(const Signature& sig, SyntacticErasure rho, std::string suffix = {});

  const Signature& erased_signature() const { return erased_; }
  const SyntacticErasure& rho() const { return rho_; }
  std::string erased_name(std::string_view f) const;
  /// Original indices of the surviving arguments of f, in order.
  std::vector<std::size_t> surviving(const FuncSymbol& f) const;

  /// tau_rho
  Term erase(const Term& t) const;

 private:
  SyntacticErasure rho_;
  std::string suffix_;
  std::set<std::string, std::less<>> defined_;
  Signature erased_;
};

/// tau_rho without a suffix.
Term erase_term(const Term& t, const SyntacticErasure& rho, const Signature& sig);

struct OriginEntry {
  std::string original;
  /// surviving[k] is the original index of erased argument k+1.
  std::vector<std::size_t> surviving;
};

struct ReductionWarning {
  enum class Kind { FuelExhausted, AmbiguousNormalForm, NoNormalForm };
  Kind kind = Kind::FuelExhausted;
  std::size_t rule = 0;  // 0-based index into the erased rules
  std::string message;
};
std::string to_string(ReductionWarning::Kind k);

struct ErasedTrs {
  Trs trs;
  std::map<std::string, OriginEntry> origin;
  SyntacticErasure rho;
  std::vector<ReductionWarning> warnings;
  bool reduced = false;
};

/// Each rule l -> r becomes tau(l) -> sigma_l(tau(r)); sigma_l sends the
/// variables dropped from l to the designated constant of their sort.
/// Throws NoGroundConstant.
ErasedTrs erase_trs(const Trs& trs, const SyntacticErasure& rho, const std::string& suffix = {});

/// Deletes trivial rules, replaces every right-hand side by its unique normal
/// form over all derivations, and deletes duplicate rules. When some
/// right-hand side has no unique normal form within the budget, a warning is
/// recorded and the input is returned unchanged.
ErasedTrs reduced_erasure(const ErasedTrs& erased, std::size_t fuel = kDefaultFuel);

/// The rules of `trs` without trivial rules.
Trs without_trivial_rules(const Trs& trs);

}  // namespace redarg

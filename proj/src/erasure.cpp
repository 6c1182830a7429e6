#include "redarg/erasure.hpp"

#include <algorithm>

#include "redarg/errors.hpp"

namespace redarg {

SyntacticErasure::SyntacticErasure(const std::map<std::string, std::set<std::size_t>>& rho) {
  for (const auto& [f, idx] : rho) {
    if (!idx.empty()) rho_.emplace(f, idx);
  }
}

const std::set<std::size_t>& SyntacticErasure::of(std::string_view f) const {
  static const std::set<std::size_t> none;
  auto it = rho_.find(f);
  return it == rho_.end() ? none : it->second;
}

bool SyntacticErasure::identity() const { return rho_.empty(); }

void SyntacticErasure::validate(const Signature& sig) const {
  for (const auto& [f, idx] : rho_) {
    SymbolRef sym = sig.find(f);
    if (!sym) throw ArityMismatch("erasure names unknown symbol " + f);
    for (std::size_t i : idx) {
      if (i < 1 || i > sym->arity()) {
        throw ArityMismatch("erasure index " + std::to_string(i) + " out of range for " + f);
      }
    }
  }
}

SyntacticErasure erasure_from_analysis(const RedundancySet& red, const Signature& sig) {
  std::map<std::string, std::set<std::size_t>> rho;
  for (const auto& f : sig.symbols()) {
    if (f->is_constructor()) continue;
    std::set<std::size_t> idx = red.indices(f->name);
    if (!idx.empty()) rho.emplace(f->name, std::move(idx));
  }
  return SyntacticErasure(rho);
}

// --- Eraser -------------------------------------------------------------------

Eraser::Eraser(const Signature& sig, SyntacticErasure rho, std::string suffix)
    : rho_(std::move(rho)), suffix_(std::move(suffix)) {
  rho_.validate(sig);
  for (const Sort& s : sig.sorts()) erased_.add_sort(s);
  for (const auto& f : sig.defined_symbols()) defined_.insert(f->name);
  for (const auto& f : sig.symbols()) {
    FuncSymbol g{erased_name(f->name), {}, f->result_sort, f->kind};
    for (std::size_t i : surviving(*f)) g.arg_sorts.push_back(f->arg_sorts[i - 1]);
    erased_.add_symbol(g);
  }
}

std::string Eraser::erased_name(std::string_view f) const {
  return defined_.contains(f) ? std::string(f) + suffix_ : std::string(f);
}

std::vector<std::size_t> Eraser::surviving(const FuncSymbol& f) const {
  const auto& drop = rho_.of(f.name);
  std::vector<std::size_t> out;
  for (std::size_t i = 1; i <= f.arity(); ++i) {
    if (!drop.contains(i)) out.push_back(i);
  }
  return out;
}

Term Eraser::erase(const Term& t) const {
  if (t.is_var()) return t;
  std::vector<Term> args;
  for (std::size_t i : surviving(t.symbol())) args.push_back(erase(t.arg(i)));
  return Term::apply(erased_.at(erased_name(t.name())), std::move(args));
}

Term erase_term(const Term& t, const SyntacticErasure& rho, const Signature& sig) {
  return Eraser(sig, rho).erase(t);
}

// --- erase_trs ------------------------------------------------------------------

std::string to_string(ReductionWarning::Kind k) {
  switch (k) {
    case ReductionWarning::Kind::FuelExhausted: return "fuel-exhausted";
    case ReductionWarning::Kind::AmbiguousNormalForm: return "ambiguous-normal-form";
    case ReductionWarning::Kind::NoNormalForm: return "no-normal-form";
  }
  return "?";
}

ErasedTrs erase_trs(const Trs& trs, const SyntacticErasure& rho, const std::string& suffix) {
  const Signature& sig = trs.signature();
  Eraser eraser(sig, rho, suffix);
  std::vector<Rule> rules;
  for (const Rule& r : trs.rules()) {
    Term lhs = eraser.erase(r.lhs);
    Substitution sigma_l;
    for (const Term& x : vars(r.lhs)) {
      if (!occurs(x.name(), lhs)) sigma_l.bind(x, eraser.erase(sig.constant_for(x.sort())));
    }
    rules.push_back({lhs, sigma_l.apply(eraser.erase(r.rhs)), r.label});
  }
  ErasedTrs out{Trs(eraser.erased_signature(), std::move(rules)), {}, rho, {}, false};
  for (const auto& f : sig.symbols()) {
    out.origin.emplace(eraser.erased_name(f->name), OriginEntry{f->name, eraser.surviving(*f)});
  }
  return out;
}

Trs without_trivial_rules(const Trs& trs) {
  std::vector<Rule> rules;
  for (const Rule& r : trs.rules()) {
    if (!r.trivial()) rules.push_back(r);
  }
  return trs.with_rules(std::move(rules));
}

ErasedTrs reduced_erasure(const ErasedTrs& erased, std::size_t fuel) {
  Trs base = without_trivial_rules(erased.trs);
  SemanticsSelector sel{SemanticsKind::Nf, std::max<std::size_t>(fuel, 1),
                        2 * std::max<std::size_t>(fuel, 1)};

  std::vector<Rule> rules;
  std::vector<ReductionWarning> warnings;
  for (std::size_t k = 0; k < base.rules().size(); ++k) {
    const Rule& r = base.rules()[k];
    BoundedSet nfs = bounded_semantics(r.rhs, base, sel);
    std::string where = "rule " + r.to_string();
    if (nfs.truncated) {
      warnings.push_back({ReductionWarning::Kind::FuelExhausted, k,
                          where + ": right-hand side did not normalize within fuel " +
                              std::to_string(fuel)});
    } else if (nfs.terms.empty()) {
      warnings.push_back({ReductionWarning::Kind::NoNormalForm, k,
                          where + ": right-hand side has no normal form"});
    } else if (nfs.terms.size() > 1) {
      warnings.push_back({ReductionWarning::Kind::AmbiguousNormalForm, k,
                          where + ": right-hand side has " + std::to_string(nfs.terms.size()) +
                              " normal forms"});
    } else {
      Rule reduced{r.lhs, nfs.terms.front(), r.label};
      if (reduced.trivial()) continue;
      if (std::find(rules.begin(), rules.end(), reduced) != rules.end()) continue;
      rules.push_back(std::move(reduced));
    }
  }

  ErasedTrs out = erased;
  if (!warnings.empty()) {
    out.warnings.insert(out.warnings.end(), warnings.begin(), warnings.end());
    out.reduced = false;
    return out;
  }
  out.trs = erased.trs.with_rules(std::move(rules));
  out.reduced = true;
  return out;
}

}  // namespace redarg

#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace redarg {

struct Sort {
  std::string name;

  friend auto operator<=>(const Sort&, const Sort&) = default;
};

enum class SymbolKind { Constructor, Defined };

struct FuncSymbol {
  std::string name;
  std::vector<Sort> arg_sorts;
  Sort result_sort;
  SymbolKind kind = SymbolKind::Constructor;

  std::size_t arity() const { return arg_sorts.size(); }
  bool is_constructor() const { return kind == SymbolKind::Constructor; }
};

using SymbolRef = std::shared_ptr<const FuncSymbol>;

/// Immutable many-sorted first-order term. Copies share structure; equality
/// is structural (variables by name, applications by symbol name and arguments).
class Term {
 public:
  static Term variable(std::string name, Sort sort);
  /// Throws ArityMismatch or SortMismatch when `args` do not fit `symbol`.
  static Term apply(SymbolRef symbol, std::vector<Term> args = {});

  bool is_var() const;
  /// Variable name, or the root symbol's name.
  const std::string& name() const;
  const Sort& sort() const;
  const FuncSymbol& symbol() const;
  const SymbolRef& symbol_ref() const;
  std::span<const Term> args() const;
  /// 1-based argument access.
  const Term& arg(std::size_t i) const;
  std::size_t arity() const;

  std::size_t hash() const;
  /// Height of the tree; leaves have depth 1.
  std::size_t depth() const;
  std::size_t size() const;
  bool is_ground() const;
  /// True when every symbol is a constructor (variables allowed).
  bool is_constructor_term() const;

  std::string to_string() const;

  friend bool operator==(const Term& a, const Term& b);
  friend std::strong_ordering operator<=>(const Term& a, const Term& b);

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Tree address; the empty path is the root. Serialized as "e" or "1.2.3".
struct Position {
  std::vector<int> path;

  static Position root() { return {}; }
  static Position parse(std::string_view text);

  bool is_root() const { return path.empty(); }
  std::size_t length() const { return path.size(); }
  Position child(int i) const;
  Position concat(const Position& q) const;
  /// p <= q in the prefix ordering.
  bool is_prefix_of(const Position& q) const;
  bool is_strict_prefix_of(const Position& q) const;
  bool parallel_to(const Position& q) const;
  std::string to_string() const;

  friend auto operator<=>(const Position&, const Position&) = default;
};

/// Finite sort-preserving map from variable names to terms.
class Substitution {
 public:
  using Map = std::map<std::string, Term>;

  Substitution() = default;

  /// Adds x -> t; throws SortMismatch when the sorts differ.
  void bind(const Term& var, const Term& value);
  const Term* lookup(const std::string& name) const;
  Term apply(const Term& t) const;
  /// (this o inner)(t) = this(inner(t)).
  Substitution compose(const Substitution& inner) const;
  bool empty() const { return map_.empty(); }
  std::size_t size() const { return map_.size(); }
  const Map& bindings() const { return map_; }
  std::string to_string() const;

  friend bool operator==(const Substitution&, const Substitution&) = default;

 private:
  Map map_;
};

struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};

std::vector<Position> positions(const Term& t);
Term subterm(const Term& t, const Position& p);
Term replace(const Term& t, const Position& p, const Term& s);

std::optional<Substitution> match(const Term& pattern, const Term& t);
std::optional<Substitution> unify(const Term& t, const Term& s);
std::optional<Substitution> unify_all(std::span<const std::pair<Term, Term>> equations);
/// Unifies the argument tuples of two f-rooted terms with argument `i` deleted.
std::optional<Substitution> unify_up_to_arg(const Term& t, const Term& s, std::size_t i);

/// {q.i in Pos(t) | root(t|_q) = f}
std::vector<Position> pos_fi(const Term& t, std::string_view f, std::size_t i);
std::vector<Position> var_positions(const Term& t, std::string_view x);
/// Distinct variables in first-occurrence (pre-order) order.
std::vector<Term> vars(const Term& t);
bool is_linear(const Term& t);
bool occurs(std::string_view x, const Term& t);

/// Applies `rename` to every variable name.
template <typename F>
Term rename_vars(const Term& t, F&& rename) {
  if (t.is_var()) return Term::variable(rename(t.name()), t.sort());
  std::vector<Term> args;
  args.reserve(t.arity());
  for (const Term& a : t.args()) args.push_back(rename_vars(a, rename));
  return Term::apply(t.symbol_ref(), std::move(args));
}

}  // namespace redarg

template <>
struct std::hash<redarg::Term> {
  std::size_t operator()(const redarg::Term& t) const { return t.hash(); }
};

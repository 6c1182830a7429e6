#include "redarg/term.hpp"

#include <algorithm>
#include <charconv>
#include <functional>

#include "redarg/errors.hpp"

namespace redarg {

struct Term::Node {
  bool is_var = false;
  std::string var_name;
  Sort sort;
  SymbolRef symbol;
  std::vector<Term> args;
  std::size_t hash = 0;
  std::size_t depth = 1;
  std::size_t size = 1;
  bool ground = true;
  bool constructor_only = true;
};

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

Term Term::variable(std::string name, Sort sort) {
  auto node = std::make_shared<Node>();
  node->is_var = true;
  node->hash = mix(0x51ed270b, std::hash<std::string>{}(name));
  node->var_name = std::move(name);
  node->sort = std::move(sort);
  node->ground = false;
  return Term(std::move(node));
}

Term Term::apply(SymbolRef symbol, std::vector<Term> args) {
  if (args.size() != symbol->arity()) {
    throw ArityMismatch("symbol " + symbol->name + " expects " +
                        std::to_string(symbol->arity()) + " arguments, got " +
                        std::to_string(args.size()));
  }
  auto node = std::make_shared<Node>();
  std::size_t h = std::hash<std::string>{}(symbol->name);
  for (std::size_t k = 0; k < args.size(); ++k) {
    const Term& a = args[k];
    if (a.sort() != symbol->arg_sorts[k]) {
      throw SortMismatch("argument " + std::to_string(k + 1) + " of " + symbol->name +
                         " has sort " + a.sort().name + ", expected " +
                         symbol->arg_sorts[k].name);
    }
    h = mix(h, a.hash());
    node->depth = std::max(node->depth, a.depth() + 1);
    node->size += a.size();
    node->ground = node->ground && a.is_ground();
    node->constructor_only = node->constructor_only && a.is_constructor_term();
  }
  node->constructor_only = node->constructor_only && symbol->is_constructor();
  node->hash = h;
  node->sort = symbol->result_sort;
  node->symbol = std::move(symbol);
  node->args = std::move(args);
  return Term(std::move(node));
}

bool Term::is_var() const { return node_->is_var; }
const std::string& Term::name() const {
  return node_->is_var ? node_->var_name : node_->symbol->name;
}
const Sort& Term::sort() const { return node_->sort; }
const FuncSymbol& Term::symbol() const { return *node_->symbol; }
const SymbolRef& Term::symbol_ref() const { return node_->symbol; }
std::span<const Term> Term::args() const { return node_->args; }
const Term& Term::arg(std::size_t i) const { return node_->args.at(i - 1); }
std::size_t Term::arity() const { return node_->args.size(); }
std::size_t Term::hash() const { return node_->hash; }
std::size_t Term::depth() const { return node_->depth; }
std::size_t Term::size() const { return node_->size; }
bool Term::is_ground() const { return node_->ground; }
bool Term::is_constructor_term() const { return node_->constructor_only; }

std::string Term::to_string() const {
  if (is_var() || arity() == 0) return name();
  std::string out = name();
  out += '(';
  for (std::size_t k = 0; k < arity(); ++k) {
    if (k) out += ',';
    out += node_->args[k].to_string();
  }
  out += ')';
  return out;
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.is_var() != b.is_var()) return false;
  if (a.is_var()) return a.name() == b.name();
  if (a.name() != b.name() || a.arity() != b.arity()) return false;
  return std::equal(a.args().begin(), a.args().end(), b.args().begin());
}

std::strong_ordering operator<=>(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (a.is_var() != b.is_var()) {
    return a.is_var() ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  if (auto c = a.name() <=> b.name(); c != 0) return c;
  if (a.is_var()) return std::strong_ordering::equal;
  if (auto c = a.arity() <=> b.arity(); c != 0) return c;
  for (std::size_t k = 0; k < a.arity(); ++k) {
    if (auto c = a.args()[k] <=> b.args()[k]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

// --- Position ---------------------------------------------------------------

Position Position::parse(std::string_view text) {
  Position p;
  if (text == "e" || text.empty()) return p;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t dot = text.find('.', start);
    std::string_view part = text.substr(start, dot == std::string_view::npos ? text.npos : dot - start);
    int value = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
    if (ec != std::errc{} || ptr != part.data() + part.size() || value < 1) {
      throw PositionOutOfRange("malformed position '" + std::string(text) + "'");
    }
    p.path.push_back(value);
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  return p;
}

Position Position::child(int i) const {
  Position p = *this;
  p.path.push_back(i);
  return p;
}

Position Position::concat(const Position& q) const {
  Position p = *this;
  p.path.insert(p.path.end(), q.path.begin(), q.path.end());
  return p;
}

bool Position::is_prefix_of(const Position& q) const {
  return path.size() <= q.path.size() && std::equal(path.begin(), path.end(), q.path.begin());
}

bool Position::is_strict_prefix_of(const Position& q) const {
  return path.size() < q.path.size() && is_prefix_of(q);
}

bool Position::parallel_to(const Position& q) const {
  return !is_prefix_of(q) && !q.is_prefix_of(*this);
}

std::string Position::to_string() const {
  if (path.empty()) return "e";
  std::string out;
  for (std::size_t k = 0; k < path.size(); ++k) {
    if (k) out += '.';
    out += std::to_string(path[k]);
  }
  return out;
}

// --- Substitution -----------------------------------------------------------

void Substitution::bind(const Term& var, const Term& value) {
  if (var.sort() != value.sort()) {
    throw SortMismatch("cannot bind " + var.name() + " : " + var.sort().name + " to " +
                       value.to_string() + " : " + value.sort().name);
  }
  map_.insert_or_assign(var.name(), value);
}

const Term* Substitution::lookup(const std::string& name) const {
  auto it = map_.find(name);
  return it == map_.end() ? nullptr : &it->second;
}

Term Substitution::apply(const Term& t) const {
  if (map_.empty() || t.is_ground()) return t;
  if (t.is_var()) {
    const Term* bound = lookup(t.name());
    return bound ? *bound : t;
  }
  std::vector<Term> args;
  args.reserve(t.arity());
  bool changed = false;
  for (const Term& a : t.args()) {
    args.push_back(apply(a));
    changed = changed || !(args.back() == a);
  }
  return changed ? Term::apply(t.symbol_ref(), std::move(args)) : t;
}

Substitution Substitution::compose(const Substitution& inner) const {
  Substitution out;
  for (const auto& [name, value] : inner.map_) {
    Term v = apply(value);
    if (!(v.is_var() && v.name() == name)) out.map_.insert_or_assign(name, std::move(v));
  }
  for (const auto& [name, value] : map_) {
    if (!inner.map_.contains(name)) out.map_.insert_or_assign(name, value);
  }
  return out;
}

std::string Substitution::to_string() const {
  std::string out = "{";
  bool first = true;
  for (const auto& [name, value] : map_) {
    if (!first) out += ", ";
    first = false;
    out += name + " -> " + value.to_string();
  }
  return out + "}";
}

// --- positions, subterms ----------------------------------------------------

namespace {

void collect_positions(const Term& t, Position& cur, std::vector<Position>& out) {
  out.push_back(cur);
  for (std::size_t k = 0; k < t.arity(); ++k) {
    cur.path.push_back(static_cast<int>(k + 1));
    collect_positions(t.args()[k], cur, out);
    cur.path.pop_back();
  }
}

Term replace_at(const Term& t, const Position& p, std::size_t depth, const Term& s) {
  if (depth == p.path.size()) return s;
  int i = p.path[depth];
  if (t.is_var() || i < 1 || static_cast<std::size_t>(i) > t.arity()) {
    throw PositionOutOfRange("position " + p.to_string() + " not in " + t.to_string());
  }
  std::vector<Term> args(t.args().begin(), t.args().end());
  args[i - 1] = replace_at(args[i - 1], p, depth + 1, s);
  return Term::apply(t.symbol_ref(), std::move(args));
}

}  // namespace

std::vector<Position> positions(const Term& t) {
  std::vector<Position> out;
  Position cur;
  collect_positions(t, cur, out);
  return out;  // pre-order equals lexicographic order on paths
}

Term subterm(const Term& t, const Position& p) {
  const Term* cur = &t;
  for (int i : p.path) {
    if (cur->is_var() || i < 1 || static_cast<std::size_t>(i) > cur->arity()) {
      throw PositionOutOfRange("position " + p.to_string() + " not in " + t.to_string());
    }
    cur = &cur->args()[i - 1];
  }
  return *cur;
}

Term replace(const Term& t, const Position& p, const Term& s) {
  Term old = subterm(t, p);
  if (old.sort() != s.sort()) {
    throw SortMismatch("cannot replace " + old.to_string() + " : " + old.sort().name +
                       " with " + s.to_string() + " : " + s.sort().name);
  }
  return replace_at(t, p, 0, s);
}

// --- matching and unification -----------------------------------------------

namespace {

bool match_into(const Term& pattern, const Term& t, Substitution& sigma) {
  if (pattern.is_var()) {
    if (pattern.sort() != t.sort()) return false;
    if (const Term* bound = sigma.lookup(pattern.name())) return *bound == t;
    sigma.bind(pattern, t);
    return true;
  }
  if (t.is_var() || pattern.name() != t.name() || pattern.arity() != t.arity()) return false;
  for (std::size_t k = 0; k < t.arity(); ++k) {
    if (!match_into(pattern.args()[k], t.args()[k], sigma)) return false;
  }
  return true;
}

std::size_t prime_count(const std::string& name) {
  std::size_t n = 0;
  for (auto it = name.rbegin(); it != name.rend() && *it == '\''; ++it) ++n;
  return n;
}

// Decides which of two distinct variables gets bound: the less-primed one is
// bound to the more-primed one; otherwise the larger name to the smaller.
bool bind_left_to_right(const Term& x, const Term& y) {
  std::size_t px = prime_count(x.name());
  std::size_t py = prime_count(y.name());
  if (px != py) return px < py;
  return x.name() > y.name();
}

}  // namespace

bool occurs(std::string_view x, const Term& t) {
  if (t.is_var()) return t.name() == x;
  for (const Term& a : t.args()) {
    if (occurs(x, a)) return true;
  }
  return false;
}

std::optional<Substitution> match(const Term& pattern, const Term& t) {
  Substitution sigma;
  if (!match_into(pattern, t, sigma)) return std::nullopt;
  return sigma;
}

std::optional<Substitution> unify_all(std::span<const std::pair<Term, Term>> equations) {
  std::vector<std::pair<Term, Term>> work(equations.begin(), equations.end());
  std::reverse(work.begin(), work.end());
  Substitution sigma;  // kept idempotent: no bound variable occurs in any range
  while (!work.empty()) {
    auto [a, b] = std::move(work.back());
    work.pop_back();
    a = sigma.apply(a);
    b = sigma.apply(b);
    if (a == b) continue;
    if (a.sort() != b.sort()) return std::nullopt;
    if (!a.is_var() && !b.is_var()) {
      if (a.name() != b.name() || a.arity() != b.arity()) return std::nullopt;
      for (std::size_t k = a.arity(); k-- > 0;) work.emplace_back(a.args()[k], b.args()[k]);
      continue;
    }
    Term var = a;
    Term value = b;
    if (!a.is_var() || (b.is_var() && !bind_left_to_right(a, b))) std::swap(var, value);
    if (occurs(var.name(), value)) return std::nullopt;
    Substitution single;
    single.bind(var, value);
    sigma = single.compose(sigma);
  }
  return sigma;
}

std::optional<Substitution> unify(const Term& t, const Term& s) {
  std::pair<Term, Term> eq{t, s};
  return unify_all(std::span(&eq, 1));
}

std::optional<Substitution> unify_up_to_arg(const Term& t, const Term& s, std::size_t i) {
  if (t.is_var() || s.is_var() || t.name() != s.name() || t.arity() != s.arity()) {
    throw ArityMismatch("unify_up_to_arg needs two applications of the same symbol");
  }
  if (i < 1 || i > t.arity()) {
    throw ArityMismatch("argument index " + std::to_string(i) + " out of range for " + t.name());
  }
  std::vector<std::pair<Term, Term>> eqs;
  for (std::size_t k = 1; k <= t.arity(); ++k) {
    if (k != i) eqs.emplace_back(t.arg(k), s.arg(k));
  }
  return unify_all(eqs);
}

std::vector<Position> pos_fi(const Term& t, std::string_view f, std::size_t i) {
  std::vector<Position> out;
  for (const Position& q : positions(t)) {
    Term sub = subterm(t, q);
    if (!sub.is_var() && sub.name() == f && i >= 1 && i <= sub.arity()) {
      out.push_back(q.child(static_cast<int>(i)));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Position> var_positions(const Term& t, std::string_view x) {
  std::vector<Position> out;
  for (const Position& p : positions(t)) {
    Term sub = subterm(t, p);
    if (sub.is_var() && sub.name() == x) out.push_back(p);
  }
  return out;
}

namespace {

void collect_vars(const Term& t, std::vector<Term>& out) {
  if (t.is_ground()) return;
  if (t.is_var()) {
    if (std::none_of(out.begin(), out.end(), [&](const Term& v) { return v.name() == t.name(); })) {
      out.push_back(t);
    }
    return;
  }
  for (const Term& a : t.args()) collect_vars(a, out);
}

void count_vars(const Term& t, std::map<std::string, int>& counts) {
  if (t.is_var()) {
    ++counts[t.name()];
    return;
  }
  for (const Term& a : t.args()) count_vars(a, counts);
}

}  // namespace

std::vector<Term> vars(const Term& t) {
  std::vector<Term> out;
  collect_vars(t, out);
  return out;
}

bool is_linear(const Term& t) {
  std::map<std::string, int> counts;
  count_vars(t, counts);
  return std::all_of(counts.begin(), counts.end(), [](const auto& kv) { return kv.second == 1; });
}

}  // namespace redarg

#include "redarg/trs.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "redarg/errors.hpp"

namespace redarg {

// --- Signature --------------------------------------------------------------

void Signature::add_sort(const Sort& sort) {
  if (!has_sort(sort.name)) sorts_.push_back(sort);
}

void Signature::add_symbol(const FuncSymbol& symbol) {
  auto ref = std::make_shared<const FuncSymbol>(symbol);
  if (auto it = index_.find(symbol.name); it != index_.end()) {
    symbols_[it->second] = std::move(ref);
    return;
  }
  index_.emplace(symbol.name, symbols_.size());
  symbols_.push_back(std::move(ref));
}

bool Signature::has_sort(std::string_view name) const {
  return std::any_of(sorts_.begin(), sorts_.end(), [&](const Sort& s) { return s.name == name; });
}

SymbolRef Signature::find(std::string_view name) const {
  auto it = index_.find(name);
  return it == index_.end() ? nullptr : symbols_[it->second];
}

const SymbolRef& Signature::at(std::string_view name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw WellFormednessError("unknown symbol " + std::string(name));
  return symbols_[it->second];
}

std::size_t Signature::index_of(std::string_view name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw WellFormednessError("unknown symbol " + std::string(name));
  return it->second;
}

std::vector<SymbolRef> Signature::symbols_of_sort(const Sort& sort) const {
  std::vector<SymbolRef> out;
  for (const auto& f : symbols_) {
    if (f->result_sort == sort) out.push_back(f);
  }
  return out;
}

std::vector<SymbolRef> Signature::constructors_of(const Sort& sort) const {
  std::vector<SymbolRef> out;
  for (const auto& f : symbols_) {
    if (f->result_sort == sort && f->is_constructor()) out.push_back(f);
  }
  return out;
}

std::vector<SymbolRef> Signature::defined_symbols() const {
  std::vector<SymbolRef> out;
  for (const auto& f : symbols_) {
    if (!f->is_constructor()) out.push_back(f);
  }
  return out;
}

std::optional<Term> Signature::designated_constant(const Sort& sort) const {
  for (const auto& c : constructors_of(sort)) {
    if (c->arity() == 0) return Term::apply(c);
  }
  // Fixpoint over sorts: smallest ground constructor term by (depth, declaration order).
  std::map<std::string, Term> best;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& c : symbols_) {
      if (!c->is_constructor()) continue;
      std::vector<Term> args;
      bool ok = true;
      for (const Sort& s : c->arg_sorts) {
        auto it = best.find(s.name);
        if (it == best.end()) {
          ok = false;
          break;
        }
        args.push_back(it->second);
      }
      if (!ok) continue;
      Term candidate = Term::apply(c, std::move(args));
      auto it = best.find(c->result_sort.name);
      if (it == best.end() || candidate.depth() < it->second.depth()) {
        best.insert_or_assign(c->result_sort.name, candidate);
        changed = true;
      }
    }
  }
  auto it = best.find(sort.name);
  if (it == best.end()) return std::nullopt;
  return it->second;
}

Term Signature::constant_for(const Sort& sort) const {
  auto c = designated_constant(sort);
  if (!c) throw NoGroundConstant(sort.name);
  return *c;
}

// --- Trs --------------------------------------------------------------------

namespace {

Term rebind(const Term& t, const Signature& sig) {
  if (t.is_var()) return t;
  SymbolRef f = sig.find(t.name());
  if (!f) throw WellFormednessError("symbol " + t.name() + " is not in the signature");
  std::vector<Term> args;
  args.reserve(t.arity());
  for (const Term& a : t.args()) args.push_back(rebind(a, sig));
  return Term::apply(f, std::move(args));
}

bool adopt_into(const Term& t, const Signature& sig, std::optional<Term>& out) {
  if (t.is_var()) return false;
  SymbolRef f = sig.find(t.name());
  if (!f) throw WellFormednessError("symbol " + t.name() + " is not in the signature");
  bool changed = f.get() != t.symbol_ref().get();
  std::vector<std::optional<Term>> args(t.arity());
  for (std::size_t k = 0; k < t.arity(); ++k) changed |= adopt_into(t.args()[k], sig, args[k]);
  if (!changed) return false;
  std::vector<Term> rebuilt;
  rebuilt.reserve(t.arity());
  for (std::size_t k = 0; k < t.arity(); ++k) rebuilt.push_back(args[k] ? *args[k] : t.args()[k]);
  out = Term::apply(f, std::move(rebuilt));
  return true;
}

}  // namespace

Term Trs::adopt(const Term& t) const {
  std::optional<Term> out;
  return adopt_into(t, sig_, out) ? *out : t;
}

Trs::Trs(Signature signature, std::vector<Rule> rules, bool terminating_attested)
    : terminating_(terminating_attested) {
  std::set<std::string> defined;
  for (const Rule& r : rules) {
    if (r.lhs.is_var()) {
      throw WellFormednessError("rule " + r.to_string() + ": left-hand side is a variable");
    }
    defined.insert(r.lhs.name());
  }
  for (const Sort& s : signature.sorts()) sig_.add_sort(s);
  for (const auto& f : signature.symbols()) {
    FuncSymbol copy = *f;
    copy.kind = defined.contains(f->name) ? SymbolKind::Defined : SymbolKind::Constructor;
    sig_.add_symbol(copy);
  }
  for (std::size_t k = 0; k < rules.size(); ++k) {
    Rule r{rebind(rules[k].lhs, sig_), rebind(rules[k].rhs, sig_), rules[k].label};
    if (r.lhs.sort() != r.rhs.sort()) {
      throw WellFormednessError("rule " + r.to_string() + ": sides have different sorts");
    }
    for (const Term& v : vars(r.rhs)) {
      if (!occurs(v.name(), r.lhs)) {
        throw WellFormednessError("rule " + r.to_string() + ": extra variable " + v.name() +
                                  " in right-hand side");
      }
    }
    for (const Term& v : vars(r.lhs)) {
      for (const Position& p : var_positions(r.lhs, v.name())) {
        if (subterm(r.lhs, p).sort() != v.sort()) {
          throw WellFormednessError("rule " + r.to_string() + ": variable " + v.name() +
                                    " used at two sorts");
        }
      }
    }
    by_root_[r.lhs.name()].push_back(k);
    rules_.push_back(std::move(r));
  }
}

const std::vector<std::size_t>& Trs::rules_of(std::string_view f) const {
  static const std::vector<std::size_t> none;
  auto it = by_root_.find(f);
  return it == by_root_.end() ? none : it->second;
}

std::string Trs::rule_label(std::size_t index) const {
  const Rule& r = rules_.at(index);
  return r.label ? *r.label : "r" + std::to_string(index + 1);
}

Trs Trs::with_rules(std::vector<Rule> rules) const {
  return Trs(sig_, std::move(rules), terminating_);
}

Trs Trs::with_termination(bool attested) const {
  Trs copy = *this;
  copy.terminating_ = attested;
  return copy;
}

Rule rename_apart(const Rule& rule, const std::vector<Term>& avoid) {
  std::set<std::string> taken;
  for (const Term& v : avoid) taken.insert(v.name());
  std::vector<Term> own = vars(rule.lhs);
  std::string suffix = "'";
  auto clashes = [&] {
    return std::any_of(own.begin(), own.end(),
                       [&](const Term& v) { return taken.contains(v.name() + suffix); });
  };
  while (clashes()) suffix += "'";
  auto ren = [&](const std::string& n) { return n + suffix; };
  return Rule{rename_vars(rule.lhs, ren), rename_vars(rule.rhs, ren), rule.label};
}

// --- parser -----------------------------------------------------------------

namespace {

enum class Tok { Ident, Colon, Arrow, LParen, RParen, Comma, End };

struct Token {
  Tok kind;
  std::string text;
};

bool ident_start(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return ident_start(c) || c == '\''; }

std::vector<Token> lex(std::string_view line, std::size_t lineno) {
  std::vector<Token> out;
  std::size_t k = 0;
  while (k < line.size()) {
    char c = line[k];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++k;
    } else if (ident_start(c)) {
      std::size_t start = k;
      while (k < line.size() && ident_char(line[k])) ++k;
      out.push_back({Tok::Ident, std::string(line.substr(start, k - start))});
    } else if (c == '-' && k + 1 < line.size() && line[k + 1] == '>') {
      out.push_back({Tok::Arrow, "->"});
      k += 2;
    } else if (c == ':') {
      out.push_back({Tok::Colon, ":"});
      ++k;
    } else if (c == '(') {
      out.push_back({Tok::LParen, "("});
      ++k;
    } else if (c == ')') {
      out.push_back({Tok::RParen, ")"});
      ++k;
    } else if (c == ',') {
      out.push_back({Tok::Comma, ","});
      ++k;
    } else {
      throw ParseError(lineno, std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({Tok::End, ""});
  return out;
}

struct RawTerm {
  std::string name;
  std::vector<RawTerm> args;
  bool parens = false;
};

class TermReader {
 public:
  TermReader(const std::vector<Token>& toks, std::size_t pos, std::size_t line)
      : toks_(toks), pos_(pos), line_(line) {}

  RawTerm read() {
    if (toks_[pos_].kind != Tok::Ident) fail("expected identifier");
    RawTerm t{toks_[pos_++].text, {}, false};
    if (toks_[pos_].kind == Tok::LParen) {
      ++pos_;
      t.parens = true;
      if (toks_[pos_].kind == Tok::RParen) {
        ++pos_;
        return t;
      }
      while (true) {
        t.args.push_back(read());
        if (toks_[pos_].kind == Tok::Comma) {
          ++pos_;
        } else if (toks_[pos_].kind == Tok::RParen) {
          ++pos_;
          break;
        } else {
          fail("expected ',' or ')'");
        }
      }
    }
    return t;
  }

  std::size_t pos() const { return pos_; }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(line_, msg + (toks_[pos_].kind == Tok::End ? " at end of line"
                                                                 : " near '" + toks_[pos_].text + "'"));
  }

 private:
  const std::vector<Token>& toks_;
  std::size_t pos_;
  std::size_t line_;
};

class Elaborator {
 public:
  Elaborator(const Signature& sig, bool allow_new_vars) : sig_(sig), allow_new_(allow_new_vars) {}

  Term elaborate(const RawTerm& raw, const std::optional<Sort>& expected) {
    if (SymbolRef f = sig_.find(raw.name)) {
      if (raw.args.size() != f->arity()) {
        throw WellFormednessError("symbol " + raw.name + " expects " +
                                  std::to_string(f->arity()) + " arguments, got " +
                                  std::to_string(raw.args.size()));
      }
      if (expected && f->result_sort != *expected) {
        throw WellFormednessError("sort clash: " + raw.name + " has sort " +
                                  f->result_sort.name + ", expected " + expected->name);
      }
      std::vector<Term> args;
      for (std::size_t k = 0; k < raw.args.size(); ++k) {
        args.push_back(elaborate(raw.args[k], f->arg_sorts[k]));
      }
      return Term::apply(f, std::move(args));
    }
    if (raw.parens) {
      throw WellFormednessError("undeclared symbol " + raw.name + " used with arguments");
    }
    if (auto it = var_sorts_.find(raw.name); it != var_sorts_.end()) {
      if (expected && it->second != *expected) {
        throw WellFormednessError("sort clash: variable " + raw.name + " used at sorts " +
                                  it->second.name + " and " + expected->name);
      }
      return Term::variable(raw.name, it->second);
    }
    if (!allow_new_) {
      throw WellFormednessError("extra variable " + raw.name + " in right-hand side");
    }
    if (!expected) {
      throw WellFormednessError("cannot infer the sort of variable " + raw.name);
    }
    var_sorts_.emplace(raw.name, *expected);
    return Term::variable(raw.name, *expected);
  }

  void freeze() { allow_new_ = false; }

 private:
  const Signature& sig_;
  bool allow_new_;
  std::map<std::string, Sort> var_sorts_;
};

struct RawRule {
  RawTerm lhs;
  RawTerm rhs;
  std::optional<std::string> label;
  std::size_t line;
};

std::string_view strip(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Trs parse_trs(std::string_view text) {
  Signature sig;
  std::vector<RawRule> raw_rules;
  bool terminating = false;
  std::set<std::string> declared;

  std::size_t lineno = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t nl = text.find('\n', start);
    std::string_view line = text.substr(start, nl == text.npos ? text.npos : nl - start);
    start = nl == text.npos ? text.size() + 1 : nl + 1;
    ++lineno;

    if (auto hash = line.find('#'); hash != line.npos) line = line.substr(0, hash);
    line = strip(line);
    if (!line.empty() && line.back() == '.') line = strip(line.substr(0, line.size() - 1));
    if (line.empty()) continue;

    std::vector<Token> toks = lex(line, lineno);
    const std::string& kw = toks[0].text;
    if (toks[0].kind != Tok::Ident) throw ParseError(lineno, "expected a declaration keyword");

    if (kw == "sort") {
      if (toks.size() != 3 || toks[1].kind != Tok::Ident) {
        throw ParseError(lineno, "expected 'sort NAME'");
      }
      if (sig.has_sort(toks[1].text)) throw WellFormednessError("duplicate sort " + toks[1].text);
      sig.add_sort(Sort{toks[1].text});
    } else if (kw == "cons" || kw == "fun") {
      if (toks.size() < 5 || toks[1].kind != Tok::Ident || toks[2].kind != Tok::Colon) {
        throw ParseError(lineno, "expected '" + kw + " NAME : SORT... -> SORT'");
      }
      std::vector<std::string> sorts;
      bool arrow = false;
      for (std::size_t k = 3; toks[k].kind != Tok::End; ++k) {
        if (toks[k].kind == Tok::Arrow) {
          bool one_result = toks[k + 1].kind == Tok::Ident && toks[k + 2].kind == Tok::End;
          if (arrow || !one_result) {
            throw ParseError(lineno, "'->' must precede exactly one result sort");
          }
          arrow = true;
          continue;
        }
        if (toks[k].kind != Tok::Ident) throw ParseError(lineno, "expected a sort name");
        sorts.push_back(toks[k].text);
      }
      if (sorts.empty()) throw ParseError(lineno, "missing result sort");
      if (arrow && sorts.size() < 2) throw ParseError(lineno, "'->' needs argument sorts");
      if (!arrow && sorts.size() > 1) throw ParseError(lineno, "expected '->' before result sort");
      for (const std::string& s : sorts) {
        if (!sig.has_sort(s)) throw WellFormednessError("undeclared sort " + s);
      }
      if (!declared.insert(toks[1].text).second) {
        throw WellFormednessError("duplicate symbol " + toks[1].text);
      }
      FuncSymbol f;
      f.name = toks[1].text;
      for (std::size_t k = 0; k + 1 < sorts.size(); ++k) f.arg_sorts.push_back(Sort{sorts[k]});
      f.result_sort = Sort{sorts.back()};
      f.kind = kw == "fun" ? SymbolKind::Defined : SymbolKind::Constructor;
      sig.add_symbol(f);
    } else if (kw == "pragma") {
      if (toks.size() != 3 || toks[1].text != "terminating") {
        throw ParseError(lineno, "unknown pragma");
      }
      terminating = true;
    } else if (kw == "rule") {
      std::size_t pos = 1;
      std::optional<std::string> label;
      if (toks.size() > 3 && toks[1].kind == Tok::Ident && toks[2].kind == Tok::Colon) {
        label = toks[1].text;
        pos = 3;
      }
      TermReader reader(toks, pos, lineno);
      RawTerm lhs = reader.read();
      pos = reader.pos();
      if (toks[pos].kind != Tok::Arrow) reader.fail("expected '->'");
      TermReader rreader(toks, pos + 1, lineno);
      RawTerm rhs = rreader.read();
      if (toks[rreader.pos()].kind != Tok::End) rreader.fail("trailing input");
      raw_rules.push_back({std::move(lhs), std::move(rhs), std::move(label), lineno});
    } else {
      throw ParseError(lineno, "unknown declaration '" + kw + "'");
    }
  }

  std::vector<Rule> rules;
  for (const RawRule& rr : raw_rules) {
    try {
      if (!sig.find(rr.lhs.name)) {
        if (rr.lhs.parens) {
          throw WellFormednessError("undeclared symbol " + rr.lhs.name + " used with arguments");
        }
        throw WellFormednessError("left-hand side is a variable");
      }
      Elaborator el(sig, true);
      Term lhs = el.elaborate(rr.lhs, std::nullopt);
      el.freeze();
      Term rhs = el.elaborate(rr.rhs, lhs.sort());
      rules.push_back({std::move(lhs), std::move(rhs), rr.label});
    } catch (const WellFormednessError& e) {
      throw WellFormednessError("line " + std::to_string(rr.line) + ": " + e.what());
    }
  }
  return Trs(std::move(sig), std::move(rules), terminating);
}

Term parse_term(std::string_view text, const Signature& sig) {
  std::vector<Token> toks = lex(text, 1);
  TermReader reader(toks, 0, 1);
  RawTerm raw = reader.read();
  if (toks[reader.pos()].kind != Tok::End) reader.fail("trailing input");
  if (!sig.find(raw.name) && !raw.parens) {
    throw WellFormednessError("cannot infer the sort of variable " + raw.name);
  }
  Elaborator el(sig, true);
  return el.elaborate(raw, std::nullopt);
}

Rule parse_rule(std::string_view text, const Signature& sig) {
  std::vector<Token> toks = lex(text, 1);
  TermReader reader(toks, 0, 1);
  RawTerm lhs_raw = reader.read();
  std::size_t pos = reader.pos();
  if (toks[pos].kind != Tok::Arrow) reader.fail("expected '->'");
  TermReader rhs_reader(toks, pos + 1, 1);
  RawTerm rhs_raw = rhs_reader.read();
  if (toks[rhs_reader.pos()].kind != Tok::End) rhs_reader.fail("trailing input");
  if (!sig.find(lhs_raw.name)) throw WellFormednessError("left-hand side is a variable");
  Elaborator el(sig, true);
  Term lhs = el.elaborate(lhs_raw, std::nullopt);
  el.freeze();
  Term rhs = el.elaborate(rhs_raw, lhs.sort());
  return {std::move(lhs), std::move(rhs), std::nullopt};
}

std::string format_trs(const Trs& trs) {
  std::ostringstream out;
  const Signature& sig = trs.signature();
  for (const Sort& s : sig.sorts()) out << "sort " << s.name << '\n';
  for (const auto& f : sig.symbols()) {
    out << (f->is_constructor() ? "cons " : "fun  ") << f->name << " :";
    for (const Sort& s : f->arg_sorts) out << ' ' << s.name;
    if (f->arity() > 0) out << " ->";
    out << ' ' << f->result_sort.name << '\n';
  }
  if (trs.terminating_attested()) out << "pragma terminating\n";
  for (const Rule& r : trs.rules()) {
    out << "rule ";
    if (r.label) out << *r.label << ": ";
    out << r.lhs.to_string() << " -> " << r.rhs.to_string() << '\n';
  }
  return out.str();
}

}  // namespace redarg

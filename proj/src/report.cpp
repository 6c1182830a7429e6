#include "redarg/report.hpp"

#include <sstream>

namespace redarg::report {

namespace {

json triple(const TripleCheck& t, const Trs& trs) {
  json j{{"rule1", trs.rule_label(t.rule1)},
         {"rule2", trs.rule_label(t.rule2)},
         {"sigma", t.sigma.to_string()},
         {"sigma_c", t.sigma_c.to_string()},
         {"left", t.left.to_string()},
         {"right", t.right.to_string()},
         {"joinable", to_string(t.joinable)}};
  j["left_nf"] = t.left_nf ? json(t.left_nf->to_string()) : json(nullptr);
  j["right_nf"] = t.right_nf ? json(t.right_nf->to_string()) : json(nullptr);
  return j;
}

json terms(const std::vector<Term>& ts) {
  json a = json::array();
  for (const Term& t : ts) a.push_back(t.to_string());
  return a;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

}  // namespace

std::string index_set(const std::set<std::size_t>& idx) {
  std::string s = "{";
  for (std::size_t i : idx) s += (s.size() > 1 ? "," : "") + std::to_string(i);
  return s + "}";
}

json properties(const PropertyReport& p, const Trs& trs) {
  json j;
  j["left_linear"] = {{"holds", p.left_linear}};
  if (p.left_linear_witness) {
    j["left_linear"]["witness"] = {{"rule", trs.rule_label(p.left_linear_witness->rule)},
                                   {"variable", p.left_linear_witness->variable}};
  }
  j["constructor_system"] = {{"holds", p.constructor_system}};
  if (p.constructor_witness) {
    j["constructor_system"]["witness"] = {{"rule", trs.rule_label(p.constructor_witness->rule)},
                                          {"reason", p.constructor_witness->reason}};
  }
  if (p.completely_defined) {
    json unc = json::object();
    for (const auto& [f, pats] : p.completely_defined->uncovered) unc[f] = terms(pats);
    j["completely_defined"] = {{"holds", p.completely_defined->complete}, {"uncovered", unc}};
  } else {
    j["completely_defined"] = {{"holds", nullptr}, {"uncovered", json::object()}};
  }
  j["confluence"] = {{"verdict", to_string(p.confluence.verdict)}, {"detail", p.confluence.detail}};
  if (const auto& w = p.confluence.witness) {
    j["confluence"]["witness"] = {{"left", w->left.to_string()},
                                  {"right", w->right.to_string()},
                                  {"overlay", w->overlay},
                                  {"position", w->position.to_string()},
                                  {"rules", {trs.rule_label(w->outer_rule), trs.rule_label(w->inner_rule)}}};
  }
  j["seval_defined"] = {{"holds", p.seval_defined}, {"failing", p.seval_failure}};
  j["terminating_attested"] = p.terminating_attested;
  return j;
}

json analysis(const AnalysisResult& r, const Trs& trs) {
  json j;
  j["properties"] = properties(r.properties, trs);
  j["methods"] = {{"variable_case", r.variable_case_enabled}, {"pattern_case", r.pattern_case_enabled}};
  j["notes"] = r.notes;
  j["rounds"] = r.rounds;
  json red = json::array();
  for (const auto& f : trs.signature().symbols()) {
    auto it = r.redundant.entries().find(f->name);
    if (it == r.redundant.entries().end()) continue;
    json just = json::array();
    std::vector<std::size_t> idx;
    for (const auto& [i, why] : it->second) {
      idx.push_back(i);
      json tr = json::array();
      for (const TripleCheck& t : why.triples) tr.push_back(triple(t, trs));
      just.push_back({{"index", i}, {"method", to_string(why.method)}, {"round", why.round}, {"triples", tr}});
    }
    red.push_back({{"symbol", f->name}, {"arity", f->arity()}, {"indices", idx}, {"justifications", just}});
  }
  j["redundant"] = red;
  json unk = json::array();
  for (const auto& u : r.unknown) {
    unk.push_back({{"symbol", u.f}, {"index", u.i}, {"round", u.round}, {"reason", u.reason}});
  }
  j["unknown"] = unk;
  return j;
}

json eval_outcome(const EvalOutcome& o) {
  return {{"kind", to_string(o.kind)}, {"term", o.term.to_string()}, {"steps", o.steps}};
}

json verdict(const Verdict& v, std::string_view f, std::size_t i) {
  json j{{"symbol", f},
         {"index", i},
         {"ctx_depth", v.ctx_depth},
         {"term_depth", v.term_depth},
         {"cases_checked", v.cases_checked},
         {"skipped_truncated", v.skipped_truncated},
         {"case_limit_hit", v.case_limit_hit}};
  if (v.counterexample) {
    const Counterexample& c = *v.counterexample;
    j["result"] = "counterexample";
    j["counterexample"] = {{"context", c.context.to_string()},
                           {"term", c.term.to_string()},
                           {"replacement", c.replacement.to_string()},
                           {"before", terms(c.before)},
                           {"after", terms(c.after)}};
  } else {
    j["result"] = "no-counterexample";
  }
  return j;
}

json diff(const DiffReport& r) {
  json w = json::array();
  for (const DiffCase& c : r.disagreements) {
    w.push_back({{"input", c.input.to_string()},
                 {"erased_input", c.erased_input.to_string()},
                 {"original", eval_outcome(c.original)},
                 {"erased", eval_outcome(c.erased)}});
  }
  return {{"trials", r.trials},       {"depth", r.depth},
          {"seed", r.seed},           {"agree", r.agree},
          {"disagree", r.disagree},   {"indeterminate", r.indeterminate},
          {"witnesses", w}};
}

json origin_map(const ErasedTrs& e) {
  json j = json::object();
  for (const auto& [name, o] : e.origin) j[name] = {{"original", o.original}, {"surviving", o.surviving}};
  return j;
}

std::string properties_text(const PropertyReport& p, const Trs& trs) {
  std::ostringstream out;
  out << "left-linear: " << yes_no(p.left_linear);
  if (p.left_linear_witness) {
    out << " (rule " << trs.rule_label(p.left_linear_witness->rule) << " repeats "
        << p.left_linear_witness->variable << ")";
  }
  out << "\nconstructor-system: " << yes_no(p.constructor_system);
  if (p.constructor_witness) {
    out << " (rule " << trs.rule_label(p.constructor_witness->rule) << ": "
        << p.constructor_witness->reason << ")";
  }
  out << "\ncompletely-defined: ";
  if (!p.completely_defined) {
    out << "n/a";
  } else {
    out << yes_no(p.completely_defined->complete);
    std::string list;
    for (const auto& [f, pats] : p.completely_defined->uncovered) {
      for (const Term& t : pats) list += (list.empty() ? "" : ", ") + t.to_string();
    }
    if (!list.empty()) out << " (uncovered " << list << ")";
  }
  out << "\nconfluence: " << to_string(p.confluence.verdict) << " (" << p.confluence.detail;
  if (const auto& w = p.confluence.witness) {
    out << ": <" << w->left.to_string() << ", " << w->right.to_string() << ">";
  }
  out << ")";
  out << "\nterminating: " << (p.terminating_attested ? "attested" : "not attested");
  out << "\nseval-defined: " << yes_no(p.seval_defined);
  if (!p.seval_defined) out << " (" << p.seval_failure << " fails)";
  out << '\n';
  return out.str();
}

std::string analysis_text(const AnalysisResult& r, const Trs& trs) {
  std::ostringstream out;
  for (const auto& f : trs.signature().symbols()) {
    auto it = r.redundant.entries().find(f->name);
    if (it == r.redundant.entries().end()) continue;
    std::set<std::size_t> idx;
    std::vector<std::string> parts;
    for (const auto& [i, why] : it->second) {
      idx.insert(i);
      std::string part = to_string(why.method) + " r" + std::to_string(why.round);
      if (parts.empty() || parts.back() != part) parts.push_back(part);
    }
    out << f->name << ": " << index_set(idx) << " (";
    if (parts.size() == 1) {
      const Justification& why = it->second.begin()->second;
      out << to_string(why.method) << ", round " << why.round;
    } else {
      for (std::size_t k = 0; k < parts.size(); ++k) out << (k ? "; " : "") << parts[k];
    }
    out << ")\n";
  }
  if (r.redundant.empty()) out << "no redundant arguments\n";
  for (const auto& u : r.unknown) {
    out << "unknown: " << u.f << " argument " << u.i << " (" << u.reason << ")\n";
  }
  for (const std::string& n : r.notes) out << "note: " << n << '\n';
  return out.str();
}

std::string verdict_text(const Verdict& v, std::string_view f, std::size_t i) {
  std::ostringstream out;
  if (v.counterexample) {
    const Counterexample& c = *v.counterexample;
    auto set = [](const std::vector<Term>& ts) {
      std::string s = "{";
      for (std::size_t k = 0; k < ts.size(); ++k) s += (k ? ", " : "") + ts[k].to_string();
      return s + "}";
    };
    out << "counterexample for " << f << " argument " << i << "\n";
    out << "context: " << c.context.to_string() << "\n";
    out << "term: " << c.term.to_string() << "\n";
    out << "replacement: " << c.replacement.to_string() << "\n";
    out << "Seval before: " << set(c.before) << "\n";
    out << "Seval after: " << set(c.after) << "\n";
  } else {
    out << "no counterexample for " << f << " argument " << i << " up to context depth "
        << v.ctx_depth << ", term depth " << v.term_depth << " (" << v.cases_checked
        << " cases checked";
    if (v.skipped_truncated) out << ", " << v.skipped_truncated << " skipped as truncated";
    if (v.case_limit_hit) out << ", case limit reached";
    out << ")\n";
  }
  return out.str();
}

}  // namespace redarg::report

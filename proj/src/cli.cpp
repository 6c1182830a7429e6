#include "redarg/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "redarg/analysis.hpp"
#include "redarg/bench.hpp"
#include "redarg/erasure.hpp"
#include "redarg/errors.hpp"
#include "redarg/oracle.hpp"
#include "redarg/report.hpp"
#include "redarg/rewrite.hpp"
#include "redarg/trs.hpp"

namespace redarg::cli {

namespace {

using nlohmann::json;

struct Options {
  std::string file;
  std::size_t fuel = kDefaultFuel;
  bool json = false;
  bool assume_terminating = false;

  std::string method = "both";
  int max_rounds = 32;

  bool reduced = false;
  std::string suffix;
  std::string output;
  std::string origin;

  std::string expr;
  std::string strategy = "innermost";
  bool count_steps = false;
  bool trace = false;

  std::size_t trials = 200;
  std::size_t depth = 6;
  std::uint64_t seed = 42;
  std::vector<std::string> rho;

  std::string symbol;
  std::size_t index = 0;
  std::size_t ctx_depth = 3;
  std::size_t term_depth = 3;
  std::size_t max_cases = 50000;

  std::string dir;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Trs load(const Options& o) {
  Trs trs = parse_trs(read_file(o.file));
  return o.assume_terminating ? trs.with_termination(true) : trs;
}

void emit(std::ostream& out, json doc, const std::string& command, const Options& o) {
  doc["command"] = command;
  if (!o.file.empty()) doc["file"] = o.file;
  out << doc.dump(2) << '\n';
}

Term ground_goal(const std::string& text, const Signature& sig) {
  Term t = parse_term(text, sig);
  if (!t.is_ground()) throw WellFormednessError("goal " + t.to_string() + " is not ground");
  return t;
}

int cmd_check(const Options& o, std::ostream& out) {
  Trs trs = load(o);
  PropertyReport p = check_properties(trs, o.fuel);
  if (o.json) {
    emit(out, {{"properties", report::properties(p, trs)}}, "check", o);
  } else {
    out << report::properties_text(p, trs);
  }
  return kOk;
}

AnalysisConfig config_for(const Options& o) {
  AnalysisConfig cfg;
  cfg.fuel = o.fuel;
  cfg.max_rounds = o.max_rounds;
  cfg.variable_case = o.method != "pattern";
  cfg.pattern_case = o.method != "variable";
  return cfg;
}

int cmd_analyze(const Options& o, std::ostream& out, std::ostream& err) {
  Trs trs = load(o);
  AnalysisConfig cfg = config_for(o);
  AnalysisResult res = analyze(trs, cfg);
  if (o.method != "both") {
    bool enabled = o.method == "variable" ? res.variable_case_enabled : res.pattern_case_enabled;
    if (!enabled) {
      for (const auto& n : res.notes) err << "precondition unmet: " << n << '\n';
      return kPrecondition;
    }
  }
  if (o.json) {
    emit(out, report::analysis(res, trs), "analyze", o);
  } else {
    out << report::analysis_text(res, trs);
  }
  return kOk;
}

SyntacticErasure parse_rho(const std::vector<std::string>& texts) {
  std::map<std::string, std::set<std::size_t>> m;
  for (const std::string& text : texts) {
    auto colon = text.find(':');
    if (colon == std::string::npos) throw CLI::ValidationError("--rho", "expected SYM:I[,J...]");
    std::string f = text.substr(0, colon);
    std::stringstream ss(text.substr(colon + 1));
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        m[f].insert(std::stoul(item));
      } catch (const std::exception&) {
        throw CLI::ValidationError("--rho", "bad index '" + item + "'");
      }
    }
  }
  return SyntacticErasure(m);
}

int cmd_erase(const Options& o, std::ostream& out, std::ostream& err) {
  Trs trs = load(o);
  SyntacticErasure rho =
      o.rho.empty() ? erasure_from_analysis(analyze(trs, config_for(o)).redundant, trs.signature())
                    : parse_rho(o.rho);
  ErasedTrs erased = erase_trs(trs, rho, o.suffix);
  if (o.reduced) erased = reduced_erasure(erased, o.fuel);
  for (const auto& w : erased.warnings) {
    err << "warning: " << to_string(w.kind) << ": " << w.message << "; reduction aborted\n";
  }
  std::string text = format_trs(erased.trs);
  std::string origin = o.origin;
  if (!o.output.empty()) {
    std::ofstream f(o.output);
    if (!f) throw Error("cannot write " + o.output);
    f << text;
    if (origin.empty()) origin = o.output + ".origin.json";
  } else {
    out << text;
  }
  if (!origin.empty()) {
    std::ofstream f(origin);
    if (!f) throw Error("cannot write " + origin);
    f << report::origin_map(erased).dump(2) << '\n';
  }
  return kOk;
}

int cmd_eval(const Options& o, std::ostream& out) {
  Trs trs = load(o);
  auto strat = parse_strategy(o.strategy);
  if (!strat) throw CLI::ValidationError("--strategy", "expected innermost or outermost");
  Term goal = ground_goal(o.expr, trs.signature());
  std::vector<Step> trace;
  EvalOutcome res = normalize(goal, trs, *strat, o.fuel, o.trace ? &trace : nullptr);
  if (res.kind == EvalOutcome::Kind::NormalForm && res.term.is_constructor_term()) {
    res.kind = EvalOutcome::Kind::Value;
  }
  if (o.json) {
    emit(out, {{"goal", goal.to_string()}, {"strategy", to_string(*strat)}, {"outcome", report::eval_outcome(res)}},
         "eval", o);
  } else {
    Term cur = goal;
    for (const Step& s : trace) {
      out << format_trace_line(cur, s, trs) << '\n';
      cur = s.result;
    }
    out << to_string(res.kind) << ": " << res.term.to_string() << '\n';
    if (o.count_steps) out << "steps: " << res.steps << '\n';
  }
  return res.reached_normal_form() ? kOk : kFuelExhausted;
}

int cmd_verify(const Options& o, std::ostream& out) {
  Trs trs = load(o);
  SyntacticErasure rho;
  if (o.rho.empty()) {
    rho = erasure_from_analysis(analyze(trs, config_for(o)).redundant, trs.signature());
  } else {
    rho = parse_rho(o.rho);
  }
  DiffReport rep = differential_verify(trs, rho, o.trials, o.depth, o.seed, o.fuel);
  if (o.json) {
    json r = json::object();
    for (const auto& [f, idx] : rho.entries()) r[f] = idx;
    emit(out, {{"erasure", r}, {"report", report::diff(rep)}}, "verify", o);
  } else {
    out << "erasure:";
    if (rho.identity()) out << " identity";
    for (const auto& [f, idx] : rho.entries()) out << ' ' << f << ' ' << report::index_set(idx);
    out << '\n' << rep.to_string();
  }
  return rep.ok() ? kOk : kNegative;
}

int cmd_oracle(const Options& o, std::ostream& out) {
  Trs trs = load(o);
  EnumBounds b;
  b.ctx_depth = o.ctx_depth;
  b.term_depth = o.term_depth;
  b.max_cases = o.max_cases;
  Verdict v = brute_force_redundant(trs, o.symbol, o.index, b);
  if (o.json) {
    emit(out, {{"verdict", report::verdict(v, o.symbol, o.index)}}, "oracle", o);
  } else {
    out << report::verdict_text(v, o.symbol, o.index);
  }
  return v.found() ? kNegative : kOk;
}

std::string steps_cell(const BenchRow& r) {
  auto s = [](const std::optional<std::size_t>& n) { return n ? std::to_string(*n) : std::string("-"); };
  return s(r.goal_steps) + " -> " + s(r.erased_goal_steps);
}

int cmd_bench(const Options& o, std::ostream& out) {
  std::vector<BenchRow> rows = run_bench(o.dir, o.fuel);
  std::size_t passed = std::count_if(rows.begin(), rows.end(), [](const BenchRow& r) { return r.pass(); });
  if (o.json) {
    json arr = json::array();
    for (const BenchRow& r : rows) {
      json found = json::object();
      for (const auto& [f, idx] : r.found) found[f] = idx;
      json j{{"name", r.name},
             {"pass", r.pass()},
             {"detection", r.detection_ok},
             {"erasure", r.erasure_ok},
             {"found", found},
             {"erased", r.erased_text},
             {"rarg_published", r.rarg_published},
             {"rarg_ours", r.rarg_ours},
             {"rarg_note", r.rarg_note},
             {"warnings", r.warnings},
             {"seconds", r.seconds}};
      j["goal_steps"] = r.goal_steps ? json(*r.goal_steps) : json(nullptr);
      j["erased_goal_steps"] = r.erased_goal_steps ? json(*r.erased_goal_steps) : json(nullptr);
      arr.push_back(j);
    }
    emit(out, {{"directory", o.dir}, {"passed", passed}, {"total", rows.size()}, {"rows", arr}}, "bench", o);
  } else {
    out << std::left << std::setw(14) << "benchmark" << std::setw(11) << "detection" << std::setw(9)
        << "erasure" << std::setw(11) << "published" << std::setw(24) << "signaled" << "goal steps\n";
    for (const BenchRow& r : rows) {
      out << std::setw(14) << r.name << std::setw(11) << (r.detection_ok ? "pass" : "FAIL")
          << std::setw(9) << (r.erasure_ok ? "pass" : "FAIL") << std::setw(11) << r.rarg_published
          << std::setw(24) << r.rarg_ours << steps_cell(r) << '\n';
      if (!r.erasure_ok) out << "  erased: " << r.erased_text << '\n';
      if (!r.detection_ok) {
        out << "  found:";
        for (const auto& [f, idx] : r.found) out << ' ' << f << ' ' << report::index_set(idx);
        out << '\n';
      }
      if (!r.rarg_note.empty()) out << "  note: " << r.rarg_note << '\n';
      for (const auto& w : r.warnings) out << "  warning: " << w << '\n';
    }
    out << passed << "/" << rows.size() << " benchmarks pass\n";
  }
  return passed == rows.size() ? kOk : kNegative;
}

void add_fuel(CLI::App* sub, Options& o) {
  sub->add_option("--fuel", o.fuel, "Rewrite step budget")->envname("REDARG_FUEL")->check(CLI::NonNegativeNumber);
}

void add_file(CLI::App* sub, Options& o) {
  sub->add_option("file", o.file, ".trs input")->required()->check(CLI::ExistingFile);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Redundant argument analysis and erasure for term rewriting systems", "redarg"};
  app.require_subcommand(1);

  auto* check = app.add_subcommand("check", "Report structural properties");
  add_file(check, o);
  add_fuel(check, o);
  check->add_flag("--json", o.json, "Machine-readable output");
  check->add_flag("--assume-terminating", o.assume_terminating, "Attest termination");

  auto* an = app.add_subcommand("analyze", "Detect redundant arguments");
  add_file(an, o);
  add_fuel(an, o);
  an->add_flag("--json", o.json, "Machine-readable output");
  an->add_flag("--assume-terminating", o.assume_terminating, "Attest termination");
  an->add_option("--method", o.method, "variable, pattern or both")
      ->check(CLI::IsMember({"variable", "pattern", "both"}));
  an->add_option("--max-rounds", o.max_rounds, "Fixpoint round limit")->check(CLI::PositiveNumber);

  auto* er = app.add_subcommand("erase", "Remove redundant arguments");
  add_file(er, o);
  add_fuel(er, o);
  er->add_flag("--assume-terminating", o.assume_terminating, "Attest termination");
  er->add_flag("--reduced", o.reduced, "Compute the reduced erasure");
  er->add_option("--suffix", o.suffix, "Suffix for erased symbol names");
  er->add_option("-o,--output", o.output, "Output .trs file");
  er->add_option("--origin", o.origin, "Origin map output file");
  er->add_option("--rho", o.rho, "Explicit erasure entry SYM:I[,J...] instead of the analysis result");

  auto* ev = app.add_subcommand("eval", "Evaluate a ground term");
  add_file(ev, o);
  add_fuel(ev, o);
  ev->add_option("-e,--expr", o.expr, "Ground term")->required();
  ev->add_option("--strategy", o.strategy, "innermost or outermost")
      ->check(CLI::IsMember({"innermost", "outermost", "leftmost-innermost", "leftmost-outermost"}));
  ev->add_flag("--count-steps", o.count_steps, "Print the number of steps");
  auto* trace = ev->add_flag("--trace", o.trace, "Print every step");
  auto* ev_json = ev->add_flag("--json", o.json, "Machine-readable output");
  ev_json->excludes(trace);

  auto* ve = app.add_subcommand("verify", "Differential check of the erasure");
  add_file(ve, o);
  add_fuel(ve, o);
  ve->add_flag("--assume-terminating", o.assume_terminating, "Attest termination");
  ve->add_option("--trials", o.trials, "Number of random goals");
  ve->add_option("--depth", o.depth, "Maximum goal depth")->check(CLI::PositiveNumber);
  ve->add_option("--seed", o.seed, "Random seed");
  ve->add_option("--rho", o.rho, "Explicit erasure entry SYM:I[,J...] instead of the analysis result");
  ve->add_flag("--json", o.json, "Machine-readable output");

  auto* orc = app.add_subcommand("oracle", "Brute-force redundancy search");
  add_file(orc, o);
  orc->add_option("-f,--symbol", o.symbol, "Function symbol")->required();
  orc->add_option("-i,--index", o.index, "Argument index (1-based)")->required()->check(CLI::PositiveNumber);
  orc->add_option("--ctx-depth", o.ctx_depth, "Context depth bound");
  orc->add_option("--term-depth", o.term_depth, "Term depth bound")->check(CLI::PositiveNumber);
  orc->add_option("--max-cases", o.max_cases, "Case limit")->check(CLI::PositiveNumber);
  orc->add_flag("--json", o.json, "Machine-readable output");

  auto* be = app.add_subcommand("bench", "Run the corpus against its expectations");
  be->add_option("dir", o.dir, "Corpus directory")->required()->check(CLI::ExistingDirectory);
  add_fuel(be, o);
  be->add_flag("--json", o.json, "Machine-readable output");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  }

  try {
    if (*check) return cmd_check(o, out);
    if (*an) return cmd_analyze(o, out, err);
    if (*er) return cmd_erase(o, out, err);
    if (*ev) return cmd_eval(o, out);
    if (*ve) return cmd_verify(o, out);
    if (*orc) return cmd_oracle(o, out);
    if (*be) return cmd_bench(o, out);
  } catch (const PreconditionUnmet& e) {
    err << "error: " << e.what() << '\n';
    return kPrecondition;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  }
  return kParseError;
}

}  // namespace redarg::cli

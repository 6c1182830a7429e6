#include "redarg/bench.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "redarg/analysis.hpp"
#include "redarg/errors.hpp"

namespace redarg {

namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  if (!in) throw Error("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Renames variables to v1, v2, ... in first-occurrence order over lhs then rhs.
std::string canonical(const Rule& r) {
  std::map<std::string, std::string> names;
  auto rename = [&](const std::string& n) {
    auto [it, fresh] = names.try_emplace(n, "v" + std::to_string(names.size() + 1));
    return it->second;
  };
  Term lhs = rename_vars(r.lhs, rename);
  Term rhs = rename_vars(r.rhs, rename);
  return lhs.to_string() + " -> " + rhs.to_string();
}

}  // namespace

BenchExpectation load_expectation(const fs::path& file) {
  auto j = nlohmann::json::parse(read_file(file));
  BenchExpectation e;
  for (const auto& [f, idx] : j.at("redundant").items()) {
    e.redundant[f] = idx.get<std::set<std::size_t>>();
  }
  e.erased = j.at("erased").get<std::vector<std::string>>();
  e.suffix = j.value("suffix", "");
  e.rarg = j.value("rarg", "");
  if (j.contains("goal")) e.goal = j.at("goal").get<std::string>();
  return e;
}

bool alpha_equivalent(const std::vector<Rule>& a, const std::vector<Rule>& b) {
  std::set<std::string> ca, cb;
  for (const Rule& r : a) ca.insert(canonical(r));
  for (const Rule& r : b) cb.insert(canonical(r));
  return ca == cb;
}

BenchRow run_benchmark(const fs::path& trs_file, std::size_t fuel) {
  BenchRow row;
  row.name = trs_file.stem().string();
  fs::path expect_file = trs_file;
  expect_file.replace_extension(".expect.json");
  BenchExpectation exp = load_expectation(expect_file);
  row.expected = exp.redundant;
  row.rarg_published = exp.rarg;

  auto start = std::chrono::steady_clock::now();
  Trs trs = parse_trs(read_file(trs_file));
  AnalysisConfig cfg;
  cfg.fuel = fuel;
  AnalysisResult res = analyze(trs, cfg);
  row.found = res.redundant.index_map();
  row.detection_ok = row.found == row.expected;

  SyntacticErasure rho = erasure_from_analysis(res.redundant, trs.signature());
  ErasedTrs reduced = reduced_erasure(erase_trs(trs, rho, exp.suffix), fuel);
  row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  for (const auto& w : reduced.warnings) row.warnings.push_back(w.message);
  for (const Rule& r : reduced.trs.rules()) {
    row.erased_text += (row.erased_text.empty() ? "" : "; ") + r.to_string();
  }
  std::vector<Rule> expected_rules;
  for (const std::string& s : exp.erased) {
    expected_rules.push_back(parse_rule(s, reduced.trs.signature()));
  }
  row.erasure_ok = alpha_equivalent(reduced.trs.rules(), expected_rules);

  std::size_t signaled = res.redundant.total();
  std::size_t symbols = res.redundant.entries().size();
  row.rarg_ours = std::to_string(signaled) + " indices on " + std::to_string(symbols) +
                  (symbols == 1 ? " symbol" : " symbols");
  auto slash = exp.rarg.find('/');
  if (slash != std::string::npos && std::to_string(signaled) != exp.rarg.substr(0, slash)) {
    row.rarg_note = "published cell " + exp.rarg + " counts differently: we signal " +
                    std::to_string(signaled) + " argument indices";
  }

  if (exp.goal) {
    Term goal = parse_term(*exp.goal, trs.signature());
    EvalOutcome a = eval(goal, trs, fuel);
    if (a.reached_normal_form()) row.goal_steps = a.steps;
    Eraser eraser(trs.signature(), rho, exp.suffix);
    EvalOutcome b = eval(eraser.erase(goal), reduced.trs, fuel);
    if (b.reached_normal_form()) row.erased_goal_steps = b.steps;
  }
  return row;
}

std::vector<BenchRow> run_bench(const fs::path& dir, std::size_t fuel) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const fs::path& p = entry.path();
    if (p.extension() != ".trs") continue;
    fs::path e = p;
    e.replace_extension(".expect.json");
    if (fs::exists(e)) files.push_back(p);
  }
  std::sort(files.begin(), files.end());
  std::vector<BenchRow> rows;
  for (const auto& f : files) rows.push_back(run_benchmark(f, fuel));
  return rows;
}

}  // namespace redarg

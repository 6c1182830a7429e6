#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "redarg/erasure.hpp"
#include "redarg/rewrite.hpp"
#include "redarg/trs.hpp"

namespace redarg {

/// Contents of NAME.expect.json next to NAME.trs.
struct BenchExpectation {
  std::map<std::string, std::set<std::size_t>> redundant;
  /// Rules of the reduced erasure, `lhs -> rhs`, over the suffixed signature.
  std::vector<std::string> erased;
  std::string suffix;
  /// Published "#signaled/#total" cell.
  std::string rarg;
  std::optional<std::string> goal;
};

BenchExpectation load_expectation(const std::filesystem::path& file);

struct BenchRow {
  std::string name;
  bool detection_ok = false;
  bool erasure_ok = false;
  std::map<std::string, std::set<std::size_t>> expected;
  std::map<std::string, std::set<std::size_t>> found;
  std::string erased_text;
  std::vector<std::string> warnings;
  std::string rarg_published;
  std::string rarg_ours;
  /// Set when our count differs from the published cell.
  std::string rarg_note;
  std::optional<std::size_t> goal_steps;
  std::optional<std::size_t> erased_goal_steps;
  double seconds = 0;

  bool pass() const { return detection_ok && erasure_ok; }
};

/// Alpha-equivalence of rule lists, ignoring order and duplicates.
bool alpha_equivalent(const std::vector<Rule>& a, const std::vector<Rule>& b);

BenchRow run_benchmark(const std::filesystem::path& trs_file, std::size_t fuel = kDefaultFuel);
/// Every NAME.trs with a NAME.expect.json in `dir`, sorted by name.
std::vector<BenchRow> run_bench(const std::filesystem::path& dir, std::size_t fuel = kDefaultFuel);

}  // namespace redarg

#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "redarg/trs.hpp"

namespace redarg::testing {

inline std::filesystem::path source_dir() { return REDARG_SOURCE_DIR; }

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Parses a `.trs` file relative to the source tree.
inline Trs load(const std::string& rel) { return parse_trs(slurp(source_dir() / rel)); }

inline Term term(const Trs& trs, std::string_view text) { return parse_term(text, trs.signature()); }

inline const std::vector<std::string>& corpus_names() {
  static const std::vector<std::string> names = {"bogus",       "applast",      "plus_minus",
                                                 "plus_leq",    "double_even",  "sum_allzeros",
                                                 "mutrec1",     "mutrec2"};
  return names;
}

inline Trs corpus(const std::string& name) { return load("corpus/" + name + ".trs"); }

}  // namespace redarg::testing

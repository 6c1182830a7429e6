#pragma once

#include <string>

#include <json.hpp>

#include "redarg/analysis.hpp"
#include "redarg/erasure.hpp"
#include "redarg/oracle.hpp"
#include "redarg/rewrite.hpp"
#include "redarg/trs.hpp"

namespace redarg::report {

using nlohmann::json;

json properties(const PropertyReport& props, const Trs& trs);
json analysis(const AnalysisResult& result, const Trs& trs);
json eval_outcome(const EvalOutcome& outcome);
json verdict(const Verdict& v, std::string_view f, std::size_t i);
json diff(const DiffReport& rep);
json origin_map(const ErasedTrs& erased);

std::string properties_text(const PropertyReport& props, const Trs& trs);
/// One line per symbol with redundant arguments, e.g.
/// `lastnew: {1,2} (variable-case r1; pattern-case r2)`, then notes.
std::string analysis_text(const AnalysisResult& result, const Trs& trs);
std::string verdict_text(const Verdict& v, std::string_view f, std::size_t i);

/// `{1,2}`
std::string index_set(const std::set<std::size_t>& idx);

}  // namespace redarg::report

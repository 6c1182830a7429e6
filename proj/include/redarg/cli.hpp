#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace redarg::cli {

enum ExitCode : int {
  kOk = 0,
  kNegative = 1,
  kParseError = 2,
  kFuelExhausted = 3,
  kPrecondition = 4,
};

/// Runs the command line `args` (without the program name). Documents go to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace redarg::cli

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace credal::cli {

enum ExitCode : int {
  kOk = 0,
  kParseError = 2,
  kSolverError = 3,
  kDualityGap = 4,
  kPropertyViolation = 5,
};

/// Runs one `credal-div` invocation. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace credal::cli

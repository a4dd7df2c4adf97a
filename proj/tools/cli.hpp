#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qrecon::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kRejected = 2,  // infeasible, or input failed validation
  kInconclusive = 3,
};

// Runs one command line (without the program name). JSON results go to
// `out` unless --output names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qrecon::cli

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mnols::cli {

/// Process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitVerificationFailed = 1,
  kExitUsage = 2,
  kExitBudgetExhausted = 3,
};

/// Runs the command line `args` (without the program name). Normal output
/// goes to `out` unless --output redirects it; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mnols::cli

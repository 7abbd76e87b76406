#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fdnoma::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,          ///< runtime error or failed verification
  kConfigInvalid = 2,
  kInfeasibleEverywhere = 3,
  kBudgetExhausted = 4,  ///< a polyblock solve hit its budget with no fallback
};

/// Entry point behind the `fdnoma` binary; args exclude the program name.
/// Results go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fdnoma::cli

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace dcr {

/// Process exit codes of the `dcr` tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitGateFailed = 1,
  kExitParseError = 2,
  kExitGuardRefused = 3,
};

/// Runs the command line (without the program name) and returns the exit
/// code. Normal output goes to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dcr

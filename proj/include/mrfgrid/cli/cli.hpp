#pragma once

#include <iosfwd>

namespace mrfgrid {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,
  kExitMismatch = 3,
  kExitInfeasible = 4,
};

/// Parses argv and runs one subcommand; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mrfgrid

#pragma once

#include <ostream>

namespace rcrt {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  exit_ok = 0,
  exit_inconsistent = 1,
  exit_invalid_input = 2,
  exit_cap_exceeded = 3,
};

/// Entry point of the `rcrt` tool, writing results to `out` and diagnostics
/// to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rcrt

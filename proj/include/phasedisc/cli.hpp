#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace phasedisc {

/// Exit codes shared by every subcommand; the JSON report carries the same
/// value as its "status" field.
enum ExitCode : int {
  kExitOk = 0,
  kExitInconclusive = 1,
  kExitInvalidInput = 2,
  kExitNumericalFailure = 3,
};

/// Runs the command-line tool. args excludes the program name. Reports go to
/// out, diagnostics to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace phasedisc

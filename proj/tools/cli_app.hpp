#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pbs::cli {

enum ExitCode : int { kOk = 0, kConfigError = 1, kConvergenceError = 2 };

/// Runs the command line (args excludes the program name). Output and
/// diagnostics go to out/err; returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pbs::cli

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace minihyper {

enum ExitCode : int { exit_ok = 0, exit_verification_failed = 1, exit_usage = 2, exit_incomplete = 3 };

/// Runs one command line (args[0] is the program name). Reports go to `out`,
/// diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace minihyper

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ramcount {

/// Exit codes of the command-line tool.
enum ExitCode : int { kOk = 0, kFailed = 1, kBadArgument = 2, kInfeasible = 3, kBudget = 4 };

/// Runs the command line `args` (without the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ramcount

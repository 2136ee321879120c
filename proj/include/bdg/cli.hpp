#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace bdg::cli {

/// Exit codes: every check passed, a mathematical check failed, bad configuration.
enum ExitCode : int { kPass = 0, kMathFailure = 1, kConfigError = 2 };

/// Runs one command; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace bdg::cli

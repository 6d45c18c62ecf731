#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace orbtrace::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int { kPass = 0, kVerificationFailed = 1, kUsageError = 2 };

/// Runs `orbtrace <args...>`; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace orbtrace::cli

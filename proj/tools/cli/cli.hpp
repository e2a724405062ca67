#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace steklov::cli {

enum ExitCode : int { kSuccess = 0, kUsage = 1, kFailure = 2 };

/// Runs the command line `steklov <args...>` (args excludes the program
/// name) writing to the given streams. Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace steklov::cli

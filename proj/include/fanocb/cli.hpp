// Subcommand front end shared by the fanocb binary and the tests.
#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fanocb {

enum ExitCode : int { kExitOk = 0, kExitCheckFailed = 1, kExitUsage = 2 };

/// Runs one command line (without the program name). Results go to out,
/// usage and parse errors to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fanocb

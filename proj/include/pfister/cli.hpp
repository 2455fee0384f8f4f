#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pfister {

/// Exit codes of the command-line front end.
enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitVerifyFailed = 2 };

/// Runs one command line (args[0] is the program name). JSON goes to `out`
/// unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pfister

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace colorpart::cli {

enum ExitCode : int {
    kOk = 0,
    kAssertionFailed = 1,
    kUsage = 2,
    kOracleMismatch = 3,
    kBudget = 4,
};

/// Runs the command line `args` (without the program name) and returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace colorpart::cli

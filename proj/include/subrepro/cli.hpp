#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace subrepro::cli {

/// Process exit codes.
enum ExitCode : int {
    kOk = 0,
    kOracleFail = 1,
    kParseError = 2,
    kInvariantViolation = 3,
    kWindowTooSmall = 4,
    kInfeasible = 5,
};

/// Runs one invocation; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace subrepro::cli

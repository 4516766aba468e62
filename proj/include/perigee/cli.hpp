#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace perigee::cli {

enum ExitCode : int {
    kOk = 0,
    kOracleMismatch = 1,
    kInvalidInput = 2,
    kBudgetExceeded = 3,
    kDegenerate = 4,
};

/// Runs one command line (without the program name). Tables go to `out`,
/// diagnostics to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace perigee::cli

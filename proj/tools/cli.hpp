#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dacalign::cli {

/// Exit codes: 0 success, 1 I/O failure, 2 invalid flags or inputs.
enum ExitCode : int { kOk = 0, kIoError = 1, kUsageError = 2 };

/// Runs the command line `args` (without the program name), writing results to
/// `out` and diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dacalign::cli

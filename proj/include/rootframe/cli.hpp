#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rootframe::cli {

/// Exit codes of the command-line front end.
enum ExitCode : int {
    kOk = 0,
    kVerifyFailed = 1,
    kUsageError = 2,
    kInternalError = 3,
};

/// Runs one command line (without the program name). Documents named "-"
/// are read from `in` / written to `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

} // namespace rootframe::cli

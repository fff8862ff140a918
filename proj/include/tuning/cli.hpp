#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tuning::cli {

enum ExitStatus : int {
    kOk = 0,
    kValidationFailed = 1,
    kUsage = 2,
    kNumericFailure = 3,
};

/// Runs one command line (args excludes the program name). Documents go to
/// `out` unless --out is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace tuning::cli

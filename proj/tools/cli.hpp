#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace pascu::cli {

/// Exit statuses.
enum Exit : int { kOk = 0, kConditionFail = 1, kInputError = 2, kNumericFailure = 3 };

/// Runs one command line (without the program name). Reports go to `out`
/// unless --out names a file; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pascu::cli

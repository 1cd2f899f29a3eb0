#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace netdelay::cli {

enum ExitCode : int { kOk = 0, kInputError = 2, kEstimationError = 3 };

// Runs the `netdelay` command line (args excludes the program name). Normal
// output goes to `out` unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace netdelay::cli

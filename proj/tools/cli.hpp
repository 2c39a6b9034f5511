#pragma once

#include <ostream>

namespace pik::cli {

enum ExitCode : int { kSuccess = 0, kNegative = 1, kUsage = 2, kUnknown = 3 };

/// Runs one command line. Output goes to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pik::cli

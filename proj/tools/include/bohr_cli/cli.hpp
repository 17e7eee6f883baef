#pragma once

#include <iosfwd>

namespace bohr::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int { kSuccess = 0, kNegative = 1, kUsage = 2 };

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bohr::cli

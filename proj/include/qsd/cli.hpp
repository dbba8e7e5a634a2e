#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qsd::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kParseError = 2,
  kInvalidInstance = 3,
  kNoConvergence = 4,
  kUncertified = 5,
};

/// Runs one command line (without the program name). "-" as a file argument
/// reads `in`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace qsd::cli

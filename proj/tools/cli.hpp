#pragma once

#include <ostream>

namespace consec::cli {

inline constexpr const char* kToolName = "consec";
inline constexpr const char* kVersion = "1.0.0";

enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kUsage = 2,
  kResource = 3,
  kMismatch = 4,
};

/// Runs one command line (argv[0] is the program name) and returns the exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace consec::cli

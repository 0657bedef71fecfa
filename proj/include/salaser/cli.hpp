#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace salaser::cli {

// Process exit codes.
inline constexpr int kOk = 0;
inline constexpr int kUsageError = 1;
inline constexpr int kNumericalFailure = 2;
inline constexpr int kVerificationFailure = 3;

/// Environment variable that prefixes relative --out paths.
inline constexpr const char* kOutDirEnv = "SALASER_OUT_DIR";

/// Runs `salaser <args...>` (args excludes the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace salaser::cli

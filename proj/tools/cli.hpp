#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace parcomp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitCapExceeded = 3;

/// Runs one command line; argv[0] is the program name.
int run_cli(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace parcomp::cli

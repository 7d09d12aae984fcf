#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mahlercf::cli {

// Exit codes shared by every subcommand.
inline constexpr int kOk = 0;
inline constexpr int kNegative = 1;      // valid answer, but "no" (e.g. not covered)
inline constexpr int kMathFailure = 2;   // a beta vanished or a quotient is not linear
inline constexpr int kPrecision = 3;     // series depth cap reached
inline constexpr int kUsage = 64;

/// Parses `args` (without the program name) and runs one subcommand.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mahlercf::cli

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lossless::cli {

inline constexpr int kExitAccept = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitReject = 3;

/// Runs one subcommand (test, mc, bounds, portfolio, gen, select).
/// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lossless::cli

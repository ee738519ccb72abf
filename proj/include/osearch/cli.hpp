#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace osearch::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Runs the `osearch` command line. Subcommands: run, sweep, bounds, verify,
/// trace. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace osearch::cli

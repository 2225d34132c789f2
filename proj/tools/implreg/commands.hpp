#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace implreg::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Runs the command line `args` (args[0] is the program name) and returns
/// the exit status: 0 success, 1 runtime or data failure, 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace implreg::cli

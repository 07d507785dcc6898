#pragma once

#include <iosfwd>

namespace desoc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;   // bad flags, schema errors, unreadable input
inline constexpr int kExitSolver = 3;  // solver did not converge

/// Entry point of the `desoc` tool. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace desoc::cli

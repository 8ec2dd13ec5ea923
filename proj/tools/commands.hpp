#pragma once

#include <ostream>

namespace soficlab {

/// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCertificationFailed = 1;
inline constexpr int kExitUsage = 2;

/// Runs one soficlab subcommand. Normal output goes to `out`, diagnostics
/// to `err`; nothing is written to the process streams directly.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace soficlab

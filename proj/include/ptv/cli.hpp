#pragma once

#include <iosfwd>

namespace ptv {

/// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitNumericalFailure = 2;

/// Entry point of the `ptv` tool: subcommands noise, denoise, metrics,
/// bench, and corpus.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ptv

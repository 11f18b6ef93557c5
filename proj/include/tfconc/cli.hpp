#pragma once

#include <iosfwd>

namespace tfconc::cli {

/// Exit codes of the command line.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitNumerical = 3;

/// Parses argv (argv[0] is the program name) and runs one subcommand:
/// bound, psi, phi, concentration, rearrange, figures, covariance.
/// CSV goes to `out` unless --out names a file (a directory for figures).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tfconc::cli

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sobwidth::cli {

inline constexpr const char* kToolVersion = "0.1.0";

// exit statuses
inline constexpr int kOk = 0;
inline constexpr int kUsageError = 1;
inline constexpr int kVerifyFailure = 2;
inline constexpr int kResourceGuard = 3;

/// Parses and runs one subcommand; data goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Round-trip-exact decimal rendering, with a trailing ".0" on integral values
/// so real-valued columns stay visibly real.
std::string fmt_real(double v);

}  // namespace sobwidth::cli

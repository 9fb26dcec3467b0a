#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "msf/laurent.hpp"

namespace msf::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 2;
inline constexpr int exit_numerical = 3;

/// Runs one command line (args excludes the program name). Results go to
/// `out`, diagnostics to `err`; the return value is the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Right-multiplies by the constant unitary V that makes the constant
/// coefficient of factor * V lower triangular with positive real diagonal.
GridSamples normalize_gauge(const GridSamples& factor);

}  // namespace msf::cli

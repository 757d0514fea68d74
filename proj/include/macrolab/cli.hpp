// cli.hpp
// Command-line front end: state, scan, bounds and version subcommands.

#pragma once

#include <iosfwd>

namespace macrolab {

inline constexpr const char* kVersion = "0.1.0";

/// Exit codes: 0 success, 1 runtime error, 2 usage error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace macrolab

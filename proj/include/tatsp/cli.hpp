#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tatsp::cli {

// Process exit codes.
inline constexpr int exit_ok = 0;
inline constexpr int exit_failure = 1;    // I/O and other runtime errors
inline constexpr int exit_usage = 2;      // bad flags, malformed input files
inline constexpr int exit_no_solution = 3;
inline constexpr int exit_infeasible = 4;

// Subcommands: generate, solve, evaluate, bench, export-mip, check-mip, oracle.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err); // args exclude argv[0]

} // namespace tatsp::cli

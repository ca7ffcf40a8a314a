#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nfold {

inline constexpr int exit_ok = 0;
inline constexpr int exit_infeasible = 2;
inline constexpr int exit_invalid = 3;
inline constexpr int exit_intractable = 4;

/// Runs one subcommand of {solve, graver, partition, bounds, steinitz,
/// schedule, color, oracle}; JSON result on out, diagnostics on err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace nfold

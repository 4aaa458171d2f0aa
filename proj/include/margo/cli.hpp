#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace margo::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitCounterexample = 1;
inline constexpr int kExitCeiling = 2;
inline constexpr int kExitUsage = 64;

/// Runs one subcommand. `args` excludes the program name. The report goes to
/// `out` (or to --out), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace margo::cli

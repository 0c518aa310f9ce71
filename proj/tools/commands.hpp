#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ddehopf::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNoConvergence = 3;
inline constexpr int kExitDiverged = 4;

/// Full command-line entry point ("hopf", "expand", "sigma2", "simulate",
/// "scan"); args excludes the program name. Returns the process exit code and
/// writes results to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ddehopf::cli

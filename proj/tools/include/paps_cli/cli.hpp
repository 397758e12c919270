#pragma once

#include <string>
#include <vector>

namespace paps::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitRefused = 2;
inline constexpr int kExitUsage = 64;

/// Runs one subcommand. args[0] is the program name. Data goes to the paths
/// given by --out/--report ("-" is standard output), diagnostics to stderr.
int run_command(const std::vector<std::string>& args);

/// Subcommand names in help order.
const std::vector<std::string>& subcommands();

}  // namespace paps::cli

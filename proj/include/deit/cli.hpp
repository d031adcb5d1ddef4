#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace deit {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitSolverError = 3;

/// Full command-line front end; returns the process exit code.
/// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Directory holding the shipped figure presets.
std::string default_preset_dir();

}  // namespace deit

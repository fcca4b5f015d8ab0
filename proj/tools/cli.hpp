#pragma once

#include <string>
#include <vector>

namespace acshock::cli {

// Exit codes: 0 pass, 1 verification failure, 2 usage/config error.
inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

/// Runs the driver with argv-style arguments (without the program name).
int run(const std::vector<std::string>& args);

}  // namespace acshock::cli

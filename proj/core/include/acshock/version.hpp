#pragma once

namespace acshock {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace acshock

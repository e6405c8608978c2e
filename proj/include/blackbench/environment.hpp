#pragma once

#include <string>
#include <utility>
#include <vector>

namespace blackbench {

inline constexpr const char* kVersion = "0.1.0";

/// Best-effort description of the machine and toolchain: cpu, os, compiler,
/// build_flags, hostname. Anything that cannot be determined is "unknown".
std::vector<std::pair<std::string, std::string>> capture_environment();

}  // namespace blackbench

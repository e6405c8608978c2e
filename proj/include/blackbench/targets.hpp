#pragma once

#include <vector>

namespace blackbench {

inline constexpr double kFinalPrecision = 1e-8;
inline constexpr int kTargetCount = 51;

/// The 51 precisions 10^(2 - 0.2 j), j = 0..50, from 1e2 down to 1e-8.
const std::vector<double>& default_target_precisions();

}  // namespace blackbench

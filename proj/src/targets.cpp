#include "blackbench/targets.hpp"

#include <cmath>

namespace blackbench {

const std::vector<double>& default_target_precisions() {
  static const std::vector<double> targets = [] {
    std::vector<double> t;
    t.reserve(kTargetCount);
    // exponent (10 - j) / 5 is exact at every integer power
    for (int j = 0; j < kTargetCount; ++j) t.push_back(std::pow(10.0, (10 - j) / 5.0));
    t.back() = kFinalPrecision;
    return t;
  }();
  return targets;
}

}  // namespace blackbench

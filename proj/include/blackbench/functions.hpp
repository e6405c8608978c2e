#pragma once

#include <span>
#include <string_view>

namespace blackbench {

namespace function_id {
inline constexpr int kSphere = 1;
inline constexpr int kEllipsoid = 2;
inline constexpr int kRastrigin = 3;
inline constexpr int kRosenbrock = 8;
}  // namespace function_id

bool function_implemented(int id) noexcept;

/// Short name for an implemented id, "unimplemented" otherwise.
std::string_view function_name(int id) noexcept;

/// Untransformed test function evaluated at z. Throws NotImplemented for
/// ids without a definition.
///
///   1  sphere       sum z_i^2
///   2  ellipsoid    sum 10^(6 (i-1)/(n-1)) z_i^2
///   3  Rastrigin    10 (n - sum cos(2 pi z_i)) + sum z_i^2
///   8  Rosenbrock   sum_{i<n} 100 (z_i^2 - z_{i+1})^2 + (z_i - 1)^2
double raw_function(int id, std::span<const double> z);

/// Coordinate of the raw optimum (the same in every component): 1 for
/// Rosenbrock, 0 otherwise. The instance translation maps x_opt onto it.
double raw_optimum_coordinate(int id) noexcept;

}  // namespace blackbench

#include "blackbench/functions.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "blackbench/errors.hpp"

namespace blackbench {

namespace {

double sphere(std::span<const double> z) {
  double sum = 0.0;
  for (double v : z) sum += v * v;
  return sum;
}

double ellipsoid(std::span<const double> z) {
  const std::size_t n = z.size();
  if (n == 1) return z[0] * z[0];
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double exponent = 6.0 * static_cast<double>(i) / static_cast<double>(n - 1);
    sum += std::pow(10.0, exponent) * z[i] * z[i];
  }
  return sum;
}

double rastrigin(std::span<const double> z) {
  double cosines = 0.0;
  double squares = 0.0;
  for (double v : z) {
    cosines += std::cos(2.0 * std::numbers::pi * v);
    squares += v * v;
  }
  return 10.0 * (static_cast<double>(z.size()) - cosines) + squares;
}

double rosenbrock(std::span<const double> z) {
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < z.size(); ++i) {
    const double a = z[i] * z[i] - z[i + 1];
    const double b = z[i] - 1.0;
    sum += 100.0 * a * a + b * b;
  }
  return sum;
}

}  // namespace

bool function_implemented(int id) noexcept {
  switch (id) {
    case function_id::kSphere:
    case function_id::kEllipsoid:
    case function_id::kRastrigin:
    case function_id::kRosenbrock:
      return true;
    default:
      return false;
  }
}

std::string_view function_name(int id) noexcept {
  switch (id) {
    case function_id::kSphere:
      return "sphere";
    case function_id::kEllipsoid:
      return "ellipsoid";
    case function_id::kRastrigin:
      return "rastrigin";
    case function_id::kRosenbrock:
      return "rosenbrock";
    default:
      return "unimplemented";
  }
}

double raw_function(int id, std::span<const double> z) {
  switch (id) {
    case function_id::kSphere:
      return sphere(z);
    case function_id::kEllipsoid:
      return ellipsoid(z);
    case function_id::kRastrigin:
      return rastrigin(z);
    case function_id::kRosenbrock:
      return rosenbrock(z);
    default:
      throw NotImplemented("function " + std::to_string(id) + " has no definition");
  }
}

double raw_optimum_coordinate(int id) noexcept {
  return id == function_id::kRosenbrock ? 1.0 : 0.0;
}

}  // namespace blackbench

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace blackbench {

/// splitmix64 generator. The constants are part of the on-disk contract:
/// instance parameters and algorithm streams are reproducible across
/// languages only if every implementation uses exactly these.
class Rng64 {
 public:
  explicit constexpr Rng64(std::uint64_t seed) noexcept : state_(seed) {}

  constexpr std::uint64_t next() noexcept {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1) with 53 random bits.
  constexpr double uniform() noexcept {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  /// Uniform in [lo, hi).
  constexpr double uniform(double lo, double hi) noexcept {
    return lo + (hi - lo) * uniform();
  }

  /// Standard normal deviate (Box-Muller, one sample per two uniforms).
  double normal() noexcept {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  constexpr std::uint64_t state() const noexcept { return state_; }

 private:
  std::uint64_t state_;
};

/// Derives an independent stream seed from a parent seed and an ordinal.
/// Pure function of its arguments; used for per-restart algorithm seeds.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t ordinal) noexcept {
  Rng64 rng(seed ^ (0x9E3779B97F4A7C15ull * (ordinal + 1)));
  return rng.next();
}

}  // namespace blackbench

#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "blackbench/problem.hpp"
#include "blackbench/rng.hpp"

namespace blackbench {

/// Ask/tell optimizer. The runner owns the evaluation loop, so an optimizer
/// can neither see the problem nor overrun its budget.
class Optimizer {
 public:
  virtual ~Optimizer() = default;

  /// Next point to evaluate, or nullopt once the optimizer has terminated
  /// (the runner may then start an independent restart).
  virtual std::optional<std::vector<double>> ask() = 0;

  virtual void tell(std::span<const double> x, double f) = 0;
};

/// Builds one optimizer per (independent) restart. The constructor only
/// receives the view, a seed and the restart ordinal; problem identity has
/// no way in.
struct AlgorithmFactory {
  using Make = std::function<std::unique_ptr<Optimizer>(const AlgorithmView& view,
                                                        std::uint64_t run_seed,
                                                        std::uint64_t restart)>;
  std::string name;
  std::uint64_t seed = 1;
  Make make;

  /// Seed for restart `restart`: a pure function of (seed, restart).
  std::uint64_t run_seed(std::uint64_t restart) const noexcept {
    return derive_seed(seed, restart);
  }
};

/// Samples uniformly in the view's bounds; never terminates on its own.
class RandomSearch final : public Optimizer {
 public:
  RandomSearch(const AlgorithmView& view, std::uint64_t seed);

  std::optional<std::vector<double>> ask() override;
  void tell(std::span<const double>, double) override {}

 private:
  std::vector<double> lower_;
  std::vector<double> upper_;
  Rng64 rng_;
};

/// Elitist (1+1) local search with isotropic Gaussian steps. Starts from a
/// uniform point in the bounds, halves sigma after 20 consecutive
/// non-improvements and terminates once sigma drops below 1e-9.
class LocalSearch1p1 final : public Optimizer {
 public:
  static constexpr int kPatience = 20;
  static constexpr double kMinSigma = 1e-9;

  LocalSearch1p1(const AlgorithmView& view, std::uint64_t seed);

  std::optional<std::vector<double>> ask() override;
  void tell(std::span<const double> x, double f) override;

  double sigma() const noexcept { return sigma_; }
  double best_f() const noexcept { return best_f_; }

 private:
  Rng64 rng_;
  std::vector<double> best_x_;
  double best_f_;
  double sigma_;
  int failures_ = 0;
  bool started_ = false;
};

AlgorithmFactory random_search(std::uint64_t seed);
AlgorithmFactory local_search_1p1(std::uint64_t seed);

/// "random-search" or "local-search-1p1". Throws ContractViolation otherwise.
AlgorithmFactory builtin_algorithm(const std::string& name, std::uint64_t seed);
std::vector<std::string> builtin_algorithm_names();

}  // namespace blackbench

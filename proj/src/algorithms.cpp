#include "blackbench/algorithms.hpp"

#include <limits>

#include "blackbench/errors.hpp"

namespace blackbench {

RandomSearch::RandomSearch(const AlgorithmView& view, std::uint64_t seed)
    : lower_(view.lower_bounds), upper_(view.upper_bounds), rng_(seed) {}

std::optional<std::vector<double>> RandomSearch::ask() {
  std::vector<double> x(lower_.size());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = rng_.uniform(lower_[i], upper_[i]);
  return x;
}

LocalSearch1p1::LocalSearch1p1(const AlgorithmView& view, std::uint64_t seed)
    : rng_(seed),
      best_x_(view.dimension),
      best_f_(std::numeric_limits<double>::infinity()),
      sigma_(0.0) {
  double range = 0.0;
  for (std::size_t i = 0; i < view.dimension; ++i) {
    best_x_[i] = rng_.uniform(view.lower_bounds[i], view.upper_bounds[i]);
    range += view.upper_bounds[i] - view.lower_bounds[i];
  }
  sigma_ = 0.2 * range / static_cast<double>(view.dimension);
}

std::optional<std::vector<double>> LocalSearch1p1::ask() {
  if (!started_) return best_x_;
  if (sigma_ < kMinSigma) return std::nullopt;
  std::vector<double> x = best_x_;
  for (double& v : x) v += sigma_ * rng_.normal();
  return x;
}

void LocalSearch1p1::tell(std::span<const double> x, double f) {
  if (!started_) {
    started_ = true;
    best_f_ = f;
    return;
  }
  if (f < best_f_) {
    failures_ = 0;
  } else if (++failures_ >= kPatience) {
    sigma_ *= 0.5;
    failures_ = 0;
  }
  if (f <= best_f_) {
    best_f_ = f;
    best_x_.assign(x.begin(), x.end());
  }
}

AlgorithmFactory random_search(std::uint64_t seed) {
  return {"random-search", seed,
          [](const AlgorithmView& view, std::uint64_t run_seed, std::uint64_t) {
            return std::make_unique<RandomSearch>(view, run_seed);
          }};
}

AlgorithmFactory local_search_1p1(std::uint64_t seed) {
  return {"local-search-1p1", seed,
          [](const AlgorithmView& view, std::uint64_t run_seed, std::uint64_t) {
            return std::make_unique<LocalSearch1p1>(view, run_seed);
          }};
}

AlgorithmFactory builtin_algorithm(const std::string& name, std::uint64_t seed) {
  if (name == "random-search") return random_search(seed);
  if (name == "local-search-1p1") return local_search_1p1(seed);
  throw ContractViolation("unknown algorithm '" + name + "'");
}

std::vector<std::string> builtin_algorithm_names() {
  return {"random-search", "local-search-1p1"};
}

}  // namespace blackbench

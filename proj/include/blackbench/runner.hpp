#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "blackbench/algorithms.hpp"
#include "blackbench/observer.hpp"
#include "blackbench/protocol.hpp"
#include "blackbench/suite.hpp"

namespace blackbench {

/// Budget of k x n evaluations per problem. In schedule mode the whole
/// suite is run once per multiplier.
struct BudgetPolicy {
  enum class Mode { kSingle, kSchedule };

  Mode mode = Mode::kSingle;
  std::uint64_t multiplier = 3;
  std::vector<std::uint64_t> schedule = {3, 10, 30, 100, 300};

  std::uint64_t budget(std::size_t dimension) const noexcept {
    return multiplier * static_cast<std::uint64_t>(dimension);
  }

  /// The multipliers an experiment runs: the schedule, or just `multiplier`.
  std::vector<std::uint64_t> multipliers() const {
    return mode == Mode::kSchedule ? schedule : std::vector<std::uint64_t>{multiplier};
  }

  static BudgetPolicy single(std::uint64_t k) { return {Mode::kSingle, k, {k}}; }
};

/// Runs independent restarts of the algorithm on `problem` until the budget
/// of k x n evaluations is spent, the final target is hit, or a restart ends
/// without evaluating anything. Restart r is seeded with factory.run_seed(r)
/// and sees the remaining budget as its hint. The last restart is cut short
/// when the budget runs out.
ProblemSummary run_problem(Problem& problem, const AlgorithmFactory& factory,
                           const BudgetPolicy& policy);

using AlgorithmSpec = std::variant<AlgorithmFactory, ExternalAlgorithm>;

std::string algorithm_name(const AlgorithmSpec& algorithm);

/// Restricts a run to part of a suite without renumbering problems. Empty
/// lists accept everything.
struct ProblemFilter {
  std::vector<int> dimensions;
  std::vector<int> functions;
  std::vector<int> instances;

  bool accepts(const SuiteLayout& layout, std::size_t index) const;
};

struct RunConfig {
  SuiteLayout layout = mini_bbob_layout();
  ProblemFilter filter;
  std::uint64_t base_seed = 1;
  std::uint64_t algorithm_seed = 1;  // recorded for external algorithms
  BudgetPolicy policy;
  unsigned threads = 1;
  bool trace = false;
  std::string command;
  std::string notes;
  std::vector<std::pair<std::string, std::string>> environment;
};

/// Problems selected by the config's filter among implemented ones, ascending.
std::vector<std::size_t> selected_indices(const RunConfig& config);

/// One run per selected problem with the policy's `multiplier`. The result
/// does not depend on the thread count.
ExperimentLog run_suite(const RunConfig& config, const AlgorithmSpec& algorithm);

/// Runs every multiplier of the policy and writes one log per multiplier:
/// `experiment.log` in single mode, `experiment_k<k>.log` in schedule mode.
/// Returns the written paths.
std::vector<std::filesystem::path> run_experiment(const RunConfig& config,
                                                  const AlgorithmSpec& algorithm,
                                                  const std::filesystem::path& output_dir);

}  // namespace blackbench

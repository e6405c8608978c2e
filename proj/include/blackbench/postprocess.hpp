#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "blackbench/observer.hpp"

namespace blackbench {

/// Fraction of (problem, target) pairs solved within x evaluations, for one
/// algorithm and dimension. x holds one entry per distinct runtime.
struct EcdfCurve {
  std::string algorithm;
  std::size_t dimension = 0;
  std::vector<double> targets;
  bool normalized = true;  // x divided by dimension
  std::vector<double> x;
  std::vector<double> y;
  std::size_t solved_pairs = 0;
  std::size_t total_pairs = 0;

  bool operator==(const EcdfCurve&) const = default;
};

/// ERT = (first-hit evaluations of successful runs + all evaluations of
/// unsuccessful runs) / successes; infinite without successes.
struct ErtEntry {
  std::string algorithm;
  int function_id = 0;
  std::size_t dimension = 0;
  double target = 0.0;
  double ert = 0.0;
  std::size_t successes = 0;
  std::size_t runs = 0;

  bool operator==(const ErtEntry&) const = default;
};

struct ErtTable {
  std::vector<ErtEntry> entries;  // sorted by (algorithm, function, dimension, target desc)

  bool operator==(const ErtTable&) const = default;
};

/// One curve per (algorithm, dimension), sorted by algorithm then dimension.
/// Throws ContractViolation on an empty log set.
std::vector<EcdfCurve> compute_ecdf(std::span<const ExperimentLog> logs,
                                    std::span<const double> targets, bool normalize_by_dimension);

ErtTable compute_ert(std::span<const ExperimentLog> logs, std::span<const double> targets);

/// Smallest budget multiplier per algorithm and a warning line for each
/// pair of algorithms whose budgets differ.
struct BudgetComparison {
  std::vector<std::pair<std::string, std::uint64_t>> minimal_multiplier;
  std::vector<std::string> warnings;
};

BudgetComparison compare_budgets(std::span<const ExperimentLog> logs);

/// Writes ecdf_dim<N>.csv per dimension, ert.csv and summary.txt. Returns the
/// written paths in that order.
std::vector<std::filesystem::path> emit_report(const ErtTable& table,
                                               std::span<const EcdfCurve> curves,
                                               const BudgetComparison& budgets,
                                               const std::filesystem::path& output_dir);

}  // namespace blackbench

#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "blackbench/algorithms.hpp"
#include "blackbench/suite.hpp"

namespace blackbench {

struct TimingEntry {
  std::size_t dimension = 0;
  std::uint64_t total_evaluations = 0;
  double total_seconds = 0.0;
  double seconds_per_evaluation = 0.0;  // total_seconds / total_evaluations

  bool operator==(const TimingEntry&) const = default;
};

struct TimingReport {
  std::string algorithm;
  bool baseline = false;
  bool legacy_f8 = false;
  std::string clock = "steady_clock (wall, monotonic)";
  std::vector<TimingEntry> entries;  // ascending dimension
  std::vector<std::pair<std::string, std::string>> environment;

  bool operator==(const TimingReport&) const = default;
};

struct TimingOptions {
  double min_seconds = 1.0;
  std::uint64_t budget_multiplier = 100;
  std::uint64_t base_seed = 1;
  bool legacy_f8 = false;  // only the first Rosenbrock instance per dimension
};

/// Problems timed for one dimension: every implemented problem, or the
/// first f8 instance in legacy mode.
std::vector<std::size_t> timing_problems(const SuiteLayout& layout, int dimension,
                                         bool legacy_f8);

/// Repeats passes over the dimension's problems until at least
/// `min_seconds` of evaluation-loop time has accumulated. Single-threaded.
TimingEntry time_dimension(const SuiteLayout& layout, int dimension,
                           const AlgorithmFactory& algorithm, const TimingOptions& options);

TimingReport run_timing(const SuiteLayout& layout, std::span<const int> dimensions,
                        const AlgorithmFactory& algorithm, const TimingOptions& options,
                        bool baseline = false);

void write_timing_reports(const std::filesystem::path& path,
                          std::span<const TimingReport> reports);
std::vector<TimingReport> read_timing_reports(const std::filesystem::path& path);

/// Human-readable table, one row per (report, dimension).
std::string format_timing_table(std::span<const TimingReport> reports);

}  // namespace blackbench

#include "blackbench/timing.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "blackbench/errors.hpp"
#include "blackbench/functions.hpp"
#include "blackbench/record.hpp"
#include "blackbench/runner.hpp"

namespace blackbench {

namespace {

using Clock = std::chrono::steady_clock;
static_assert(Clock::is_steady, "timing needs a monotonic clock");

}  // namespace

std::vector<std::size_t> timing_problems(const SuiteLayout& layout, int dimension,
                                         bool legacy_f8) {
  const auto d = std::ranges::find(layout.dimensions, dimension);
  if (d == layout.dimensions.end())
    throw ContractViolation("dimension " + std::to_string(dimension) + " not in suite");
  const auto d_rank = static_cast<std::size_t>(d - layout.dimensions.begin());

  if (legacy_f8) return {suite_index(layout, d_rank, function_id::kRosenbrock, 0)};

  std::vector<std::size_t> out;
  for (std::size_t index : implemented_indices(layout))
    if (decompose_index(layout, index).dimension_rank == d_rank) out.push_back(index);
  if (out.empty())
    throw ContractViolation("no implemented problems in dimension " + std::to_string(dimension));
  return out;
}

TimingEntry time_dimension(const SuiteLayout& layout, int dimension,
                           const AlgorithmFactory& algorithm, const TimingOptions& options) {
  const auto indices = timing_problems(layout, dimension, options.legacy_f8);
  const BudgetPolicy policy = BudgetPolicy::single(options.budget_multiplier);

  TimingEntry entry;
  entry.dimension = static_cast<std::size_t>(dimension);
  Clock::duration elapsed{};
  while (entry.total_evaluations == 0 ||
         std::chrono::duration<double>(elapsed).count() < options.min_seconds) {
    for (std::size_t index : indices) {
      Problem problem = build_problem(layout, index, options.base_seed);
      const auto start = Clock::now();
      run_problem(problem, algorithm, policy);
      elapsed += Clock::now() - start;
      entry.total_evaluations += problem.evaluations();
    }
  }
  entry.total_seconds = std::chrono::duration<double>(elapsed).count();
  entry.seconds_per_evaluation =
      entry.total_seconds / static_cast<double>(entry.total_evaluations);
  return entry;
}

TimingReport run_timing(const SuiteLayout& layout, std::span<const int> dimensions,
                        const AlgorithmFactory& algorithm, const TimingOptions& options,
                        bool baseline) {
  TimingReport report;
  report.algorithm = algorithm.name;
  report.baseline = baseline;
  report.legacy_f8 = options.legacy_f8;
  std::vector<int> dims(dimensions.begin(), dimensions.end());
  std::ranges::sort(dims);
  dims.erase(std::unique(dims.begin(), dims.end()), dims.end());
  for (int d : dims) report.entries.push_back(time_dimension(layout, d, algorithm, options));
  return report;
}

void write_timing_reports(const std::filesystem::path& path,
                          std::span<const TimingReport> reports) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  for (const auto& r : reports) {
    out << RecordWriter("timing_meta")
               .field("format_version", 1)
               .field("algorithm", r.algorithm)
               .field("baseline", r.baseline)
               .field("legacy_f8", r.legacy_f8)
               .field("clock", r.clock)
               .field("environment",
                      std::span<const std::pair<std::string, std::string>>(r.environment))
               .str()
        << '\n';
    for (const auto& e : r.entries) {
      out << RecordWriter("timing")
                 .field("algorithm", r.algorithm)
                 .field("dimension", static_cast<std::uint64_t>(e.dimension))
                 .field("total_evaluations", e.total_evaluations)
                 .field("total_seconds", e.total_seconds)
                 .field("seconds_per_evaluation", e.seconds_per_evaluation)
                 .str()
          << '\n';
    }
  }
  out.flush();
  if (!out) throw IoError("write to " + path.string() + " failed");
}

std::vector<TimingReport> read_timing_reports(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<TimingReport> reports;
  std::string text;
  std::size_t ln = 0;
  while (std::getline(in, text)) {
    ++ln;
    const Record r = parse_record(text, ln);
    const std::string kind = record_kind(r, ln);
    if (kind == "timing_meta") {
      TimingReport report;
      report.algorithm = read_string(r, "algorithm", ln);
      report.baseline = read_bool(r, "baseline", ln);
      report.legacy_f8 = read_bool(r, "legacy_f8", ln);
      report.clock = read_string(r, "clock", ln);
      report.environment = read_string_map(r, "environment", ln);
      reports.push_back(std::move(report));
    } else if (kind == "timing") {
      if (reports.empty()) throw ParseError(ln, "'timing' before 'timing_meta'");
      if (read_string(r, "algorithm", ln) != reports.back().algorithm)
        throw ParseError(ln, "entry algorithm differs from its report");
      TimingEntry e;
      e.dimension = read_uint(r, "dimension", ln);
      e.total_evaluations = read_uint(r, "total_evaluations", ln);
      e.total_seconds = read_real(r, "total_seconds", ln);
      e.seconds_per_evaluation = read_real(r, "seconds_per_evaluation", ln);
      reports.back().entries.push_back(e);
    } else {
      throw ParseError(ln, "unknown record kind '" + kind + "'");
    }
  }
  return reports;
}

std::string format_timing_table(std::span<const TimingReport> reports) {
  std::ostringstream out;
  char row[160];
  std::snprintf(row, sizeof row, "%-20s %9s %5s %14s %12s %16s\n", "algorithm", "baseline",
                "dim", "evaluations", "seconds", "seconds/eval");
  out << row;
  for (const auto& r : reports) {
    for (const auto& e : r.entries) {
      std::snprintf(row, sizeof row, "%-20s %9s %5zu %14llu %12.4f %16.3e\n", r.algorithm.c_str(),
                    r.baseline ? "yes" : "no", e.dimension,
                    static_cast<unsigned long long>(e.total_evaluations), e.total_seconds,
                    e.seconds_per_evaluation);
      out << row;
    }
  }
  return out.str();
}

}  // namespace blackbench

#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "blackbench/problem.hpp"
#include "blackbench/suite.hpp"

namespace blackbench {

inline constexpr int kLogFormatVersion = 1;

/// First-hit runtime of one problem for one target precision.
struct RuntimeRecord {
  std::size_t suite_index = 0;
  double target_precision = 0.0;
  std::uint64_t evaluations = 0;
  double f_observed = 0.0;

  bool operator==(const RuntimeRecord&) const = default;
};

/// One (evaluation number, f) pair of the debug trace.
struct TracePoint {
  std::uint64_t evaluation = 0;
  double f = 0.0;

  bool operator==(const TracePoint&) const = default;
};

struct ProblemSummary {
  std::uint64_t evaluations = 0;
  std::uint64_t constraint_evaluations = 0;
  double best_f = 0.0;
  std::uint64_t budget = 0;
  std::uint64_t restarts = 0;
  bool final_target_hit = false;
  std::string status = "ok";

  bool operator==(const ProblemSummary&) const = default;
};

struct ProblemBlock {
  std::size_t suite_index = 0;
  int function_id = 0;
  int instance_id = 0;
  std::size_t dimension = 0;
  double f_opt = 0.0;
  std::vector<double> x_opt;
  std::vector<RuntimeRecord> records;  // descending precision
  std::vector<TracePoint> trace;       // empty unless debug tracing
  ProblemSummary summary;

  bool operator==(const ProblemBlock&) const = default;
};

struct ExperimentMeta {
  int format_version = kLogFormatVersion;
  std::string suite;
  SuiteLayout layout;
  std::string algorithm;
  std::uint64_t base_seed = 1;
  std::uint64_t algorithm_seed = 1;
  std::uint64_t budget_multiplier = 0;
  std::vector<int> budget_schedule;
  std::string command;
  std::string notes;
  std::string version;
  std::vector<std::pair<std::string, std::string>> environment;

  bool operator==(const ExperimentMeta&) const = default;
};

struct ExperimentLog {
  ExperimentMeta meta;
  std::vector<ProblemBlock> blocks;  // ascending suite_index

  bool operator==(const ExperimentLog&) const = default;
};

/// Collects the hits (and optionally the full trace) of one problem. Owned
/// by whichever thread runs the problem; detaches itself on destruction.
class ProblemRecorder final : public EvaluationListener {
 public:
  ProblemRecorder(Problem& problem, bool trace);
  ~ProblemRecorder() override;

  ProblemRecorder(const ProblemRecorder&) = delete;
  ProblemRecorder& operator=(const ProblemRecorder&) = delete;

  void on_evaluation(std::uint64_t evaluation, double f) override;
  void on_hit(const Hit& hit) override;

  /// Detaches and returns the finished block.
  ProblemBlock finish(ProblemSummary summary);

 private:
  Problem* problem_;
  bool trace_;
  ProblemBlock block_;
};

/// Per-experiment sink. Blocks may arrive from any thread in any order; the
/// log is always ordered by suite index.
class Observer {
 public:
  explicit Observer(ExperimentMeta meta, bool trace = false);

  /// Throws ContractViolation if the problem is already attached.
  ProblemRecorder attach(Problem& problem) const { return ProblemRecorder(problem, trace_); }

  /// Thread-safe. Throws ContractViolation on a duplicate suite index.
  void submit(ProblemBlock block);

  ExperimentLog log() const;

 private:
  ExperimentMeta meta_;
  bool trace_;
  mutable std::mutex mutex_;
  std::map<std::size_t, ProblemBlock> blocks_;
};

void write_log(std::ostream& out, const ExperimentLog& log);
void write_log(const std::filesystem::path& path, const ExperimentLog& log);

/// Throws ParseError naming the offending line.
ExperimentLog read_log(std::istream& in);
ExperimentLog read_log(const std::filesystem::path& path);

/// Structural checks beyond well-formedness: block order, one block per
/// index, hit monotonicity, hits within the evaluation total. Returns the
/// list of problems found (empty means valid).
std::vector<std::string> validate_log(const ExperimentLog& log);

}  // namespace blackbench

#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace blackbench {

/// Identity and ground truth of one (dimension, function, instance) triple.
/// Never handed to an optimizer.
struct ProblemDescriptor {
  int function_id = 0;
  int instance_id = 0;
  std::size_t dimension = 0;
  std::size_t suite_index = 0;
  double f_opt = 0.0;
  std::vector<double> x_opt;
  std::vector<double> target_precisions;

  bool operator==(const ProblemDescriptor&) const = default;
};

/// Everything an optimizer is allowed to know about a problem before it
/// starts. Deliberately carries no identity or optimum information.
struct AlgorithmView {
  std::size_t dimension = 0;
  std::size_t num_objectives = 1;
  std::size_t num_constraints = 0;
  std::vector<double> lower_bounds;
  std::vector<double> upper_bounds;
  std::vector<double> initial_solution;
  std::optional<std::uint64_t> budget_hint;

  bool operator==(const AlgorithmView&) const = default;
};

/// First time the best-so-far value reached f_opt + precision.
struct Hit {
  double precision = 0.0;
  std::uint64_t evaluations = 0;
  double f = 0.0;

  bool operator==(const Hit&) const = default;
};

/// Receives evaluation events from an attached problem. Used by the observer.
class EvaluationListener {
 public:
  virtual ~EvaluationListener() = default;
  virtual void on_evaluation(std::uint64_t evaluation, double f) = 0;
  virtual void on_hit(const Hit& hit) = 0;
};

/// An evaluatable function instance with its runtime bookkeeping.
///
/// Single owner: one thread evaluates at a time. The evaluation counter
/// never resets; it is the runtime measure across all restarts.
class Problem {
 public:
  Problem(ProblemDescriptor descriptor, std::vector<double> lower_bounds,
          std::vector<double> upper_bounds);

  Problem(Problem&&) noexcept = default;
  Problem& operator=(Problem&&) noexcept = default;
  Problem(const Problem&) = delete;
  Problem& operator=(const Problem&) = delete;

  const ProblemDescriptor& descriptor() const noexcept { return descriptor_; }

  std::size_t dimension() const noexcept { return descriptor_.dimension; }
  std::size_t num_objectives() const noexcept { return 1; }
  std::size_t num_constraints() const noexcept { return 0; }
  const std::vector<double>& lower_bounds() const noexcept { return lower_; }
  const std::vector<double>& upper_bounds() const noexcept { return upper_; }

  /// Midpoint of the domain of interest.
  std::vector<double> initial_solution() const;

  /// Objective value at x. Throws ContractViolation on a dimension mismatch
  /// or non-finite input; counters are untouched in that case.
  double evaluate(std::span<const double> x);

  /// Always throws UnsupportedOperation: shipped problems are unconstrained.
  std::vector<double> evaluate_constraint(std::span<const double> x);

  bool final_target_hit() const noexcept;

  std::uint64_t evaluations() const noexcept { return evaluations_; }
  std::uint64_t constraint_evaluations() const noexcept { return constraint_evaluations_; }
  double best_f() const noexcept { return best_f_; }
  const std::vector<Hit>& hit_log() const noexcept { return hits_; }

  AlgorithmView algorithm_view(std::optional<std::uint64_t> budget_hint = std::nullopt) const;

  /// Throws ContractViolation if a listener is already attached.
  void attach(EvaluationListener& listener);
  void detach() noexcept { listener_ = nullptr; }
  bool attached() const noexcept { return listener_ != nullptr; }

 private:
  ProblemDescriptor descriptor_;
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<double> z_;
  double raw_shift_ = 0.0;
  std::uint64_t evaluations_ = 0;
  std::uint64_t constraint_evaluations_ = 0;
  double best_f_ = std::numeric_limits<double>::infinity();
  std::vector<Hit> hits_;
  std::size_t next_target_ = 0;
  EvaluationListener* listener_ = nullptr;
};

/// Line-record serialization of a view: {"kind":"problem_start", ...fields}.
/// This is the exact payload of the wire protocol's problem_start message.
std::string serialize_view(const AlgorithmView& view, std::string_view kind = "problem_start");

}  // namespace blackbench

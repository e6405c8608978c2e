#include "blackbench/problem.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "blackbench/errors.hpp"
#include "blackbench/functions.hpp"
#include "blackbench/record.hpp"

namespace blackbench {

Problem::Problem(ProblemDescriptor descriptor, std::vector<double> lower_bounds,
                 std::vector<double> upper_bounds)
    : descriptor_(std::move(descriptor)),
      lower_(std::move(lower_bounds)),
      upper_(std::move(upper_bounds)),
      z_(descriptor_.dimension),
      raw_shift_(raw_optimum_coordinate(descriptor_.function_id)) {
  const std::size_t n = descriptor_.dimension;
  if (n == 0) throw ContractViolation("problem dimension must be positive");
  if (descriptor_.x_opt.size() != n || lower_.size() != n || upper_.size() != n)
    throw ContractViolation("problem vectors do not match dimension " + std::to_string(n));
  if (!function_implemented(descriptor_.function_id))
    throw NotImplemented("function " + std::to_string(descriptor_.function_id) +
                         " has no definition");
  const auto& t = descriptor_.target_precisions;
  if (t.empty()) throw ContractViolation("problem needs at least one target precision");
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!(t[i] > 0.0)) throw ContractViolation("target precisions must be positive");
    if (i > 0 && !(t[i] < t[i - 1]))
      throw ContractViolation("target precisions must be strictly decreasing");
  }
}

std::vector<double> Problem::initial_solution() const {
  std::vector<double> x(dimension());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = 0.5 * (lower_[i] + upper_[i]);
  return x;
}

double Problem::evaluate(std::span<const double> x) {
  if (x.size() != dimension())
    throw ContractViolation("evaluate: expected " + std::to_string(dimension()) +
                            " coordinates, got " + std::to_string(x.size()));
  if (!std::ranges::all_of(x, [](double v) { return std::isfinite(v); }))
    throw ContractViolation("evaluate: non-finite coordinate");

  for (std::size_t i = 0; i < z_.size(); ++i) z_[i] = x[i] - descriptor_.x_opt[i] + raw_shift_;
  const double f = raw_function(descriptor_.function_id, z_) + descriptor_.f_opt;

  ++evaluations_;
  best_f_ = std::min(best_f_, f);
  if (listener_) listener_->on_evaluation(evaluations_, f);

  const auto& targets = descriptor_.target_precisions;
  while (next_target_ < targets.size() && f <= descriptor_.f_opt + targets[next_target_]) {
    hits_.push_back(Hit{targets[next_target_], evaluations_, f});
    if (listener_) listener_->on_hit(hits_.back());
    ++next_target_;
  }
  return f;
}

std::vector<double> Problem::evaluate_constraint(std::span<const double>) {
  throw UnsupportedOperation("problem has no constraints");
}

bool Problem::final_target_hit() const noexcept {
  return best_f_ <= descriptor_.f_opt + descriptor_.target_precisions.back();
}

AlgorithmView Problem::algorithm_view(std::optional<std::uint64_t> budget_hint) const {
  AlgorithmView view;
  view.dimension = dimension();
  view.num_objectives = num_objectives();
  view.num_constraints = num_constraints();
  view.lower_bounds = lower_;
  view.upper_bounds = upper_;
  view.initial_solution = initial_solution();
  view.budget_hint = budget_hint;
  return view;
}

void Problem::attach(EvaluationListener& listener) {
  if (listener_) throw ContractViolation("problem is already attached to an observer");
  listener_ = &listener;
}

std::string serialize_view(const AlgorithmView& view, std::string_view kind) {
  RecordWriter w(kind);
  w.field("dimension", static_cast<std::uint64_t>(view.dimension))
      .field("num_objectives", static_cast<std::uint64_t>(view.num_objectives))
      .field("num_constraints", static_cast<std::uint64_t>(view.num_constraints))
      .field("lower_bounds", std::span<const double>(view.lower_bounds))
      .field("upper_bounds", std::span<const double>(view.upper_bounds))
      .field("initial_solution", std::span<const double>(view.initial_solution));
  if (view.budget_hint) w.field("budget_hint", *view.budget_hint);
  return w.str();
}

}  // namespace blackbench

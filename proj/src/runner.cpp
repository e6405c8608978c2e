#include "blackbench/runner.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "blackbench/environment.hpp"
#include "blackbench/errors.hpp"

namespace blackbench {

ProblemSummary run_problem(Problem& problem, const AlgorithmFactory& factory,
                           const BudgetPolicy& policy) {
  ProblemSummary summary;
  summary.budget = policy.budget(problem.dimension());
  const std::uint64_t budget = summary.budget;

  try {
    while (problem.evaluations() < budget && !problem.final_target_hit()) {
      const std::uint64_t restart = summary.restarts++;
      const std::uint64_t at_start = problem.evaluations();
      auto optimizer =
          factory.make(problem.algorithm_view(budget - at_start), factory.run_seed(restart), restart);
      while (problem.evaluations() < budget && !problem.final_target_hit()) {
        auto x = optimizer->ask();
        if (!x) break;
        const double f = problem.evaluate(*x);
        optimizer->tell(*x, f);
      }
      // an optimizer that stops without evaluating would restart forever
      if (problem.evaluations() == at_start) break;
    }
  } catch (const std::exception& e) {
    summary.status = std::string("aborted: ") + e.what();
  }

  summary.evaluations = problem.evaluations();
  summary.constraint_evaluations = problem.constraint_evaluations();
  summary.best_f = problem.best_f();
  summary.final_target_hit = problem.final_target_hit();
  return summary;
}

std::string algorithm_name(const AlgorithmSpec& algorithm) {
  return std::visit([](const auto& a) { return a.name; }, algorithm);
}

bool ProblemFilter::accepts(const SuiteLayout& layout, std::size_t index) const {
  const auto c = decompose_index(layout, index);
  auto allowed = [](const std::vector<int>& list, int value) {
    return list.empty() || std::ranges::find(list, value) != list.end();
  };
  return allowed(dimensions, layout.dimensions[c.dimension_rank]) &&
         allowed(functions, layout.function_ids[c.function_rank]) &&
         allowed(instances, layout.instances[c.instance_rank]);
}

std::vector<std::size_t> selected_indices(const RunConfig& config) {
  std::vector<std::size_t> out;
  for (std::size_t index : implemented_indices(config.layout))
    if (config.filter.accepts(config.layout, index)) out.push_back(index);
  return out;
}

namespace {

ExperimentMeta make_meta(const RunConfig& config, const AlgorithmSpec& algorithm) {
  ExperimentMeta m;
  m.suite = config.layout.name;
  m.layout = config.layout;
  m.algorithm = algorithm_name(algorithm);
  m.base_seed = config.base_seed;
  m.algorithm_seed = std::holds_alternative<AlgorithmFactory>(algorithm)
                         ? std::get<AlgorithmFactory>(algorithm).seed
                         : config.algorithm_seed;
  m.budget_multiplier = config.policy.multiplier;
  for (auto k : config.policy.multipliers()) m.budget_schedule.push_back(static_cast<int>(k));
  m.command = config.command;
  m.notes = config.notes;
  m.version = kVersion;
  m.environment = config.environment;
  return m;
}

ProblemSummary run_one(Problem& problem, const AlgorithmSpec& algorithm,
                       const BudgetPolicy& policy) {
  if (const auto* factory = std::get_if<AlgorithmFactory>(&algorithm))
    return run_problem(problem, *factory, policy);
  return serve_problem(problem, std::get<ExternalAlgorithm>(algorithm),
                       policy.budget(problem.dimension()));
}

}  // namespace

ExperimentLog run_suite(const RunConfig& config, const AlgorithmSpec& algorithm) {
  const auto indices = selected_indices(config);
  Observer observer(make_meta(config, algorithm), config.trace);

  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;

  auto worker = [&] {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= indices.size()) return;
      const std::size_t index = indices[k];
      try {
        Problem problem = build_problem(config.layout, index, config.base_seed);
        auto recorder = observer.attach(problem);
        ProblemSummary summary = run_one(problem, algorithm, config.policy);
        observer.submit(recorder.finish(std::move(summary)));
      } catch (const std::exception& e) {
        std::lock_guard lock(error_mutex);
        if (!first_error)
          first_error = std::make_exception_ptr(
              Error("problem " + std::to_string(index) + ": " + e.what()));
        next = indices.size();
        return;
      }
    }
  };

  const unsigned threads = std::max(1u, std::min<unsigned>(config.threads,
                                                           static_cast<unsigned>(indices.size())));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (first_error) std::rethrow_exception(first_error);
  return observer.log();
}

std::vector<std::filesystem::path> run_experiment(const RunConfig& config,
                                                  const AlgorithmSpec& algorithm,
                                                  const std::filesystem::path& output_dir) {
  std::error_code ec;
  std::filesystem::create_directories(output_dir, ec);
  if (ec) throw IoError("cannot create " + output_dir.string() + ": " + ec.message());

  std::vector<std::filesystem::path> written;
  for (const std::uint64_t k : config.policy.multipliers()) {
    RunConfig one = config;
    one.policy.multiplier = k;
    const ExperimentLog log = run_suite(one, algorithm);
    const auto path = config.policy.mode == BudgetPolicy::Mode::kSchedule
                          ? output_dir / ("experiment_k" + std::to_string(k) + ".log")
                          : output_dir / "experiment.log";
    write_log(path, log);
    written.push_back(path);
  }
  return written;
}

}  // namespace blackbench

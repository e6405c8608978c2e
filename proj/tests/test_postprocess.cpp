#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "blackbench/errors.hpp"
#include "blackbench/postprocess.hpp"
#include "blackbench/targets.hpp"
#include "support/oracles.hpp"
#include "support/synthetic.hpp"

using namespace blackbench;

namespace {

ProblemBlock block(std::size_t index, int f, std::size_t dim, std::uint64_t total,
                   std::vector<std::pair<double, std::uint64_t>> hits) {
  ProblemBlock b;
  b.suite_index = index;
  b.function_id = f;
  b.dimension = dim;
  b.summary.evaluations = total;
  for (auto [p, e] : hits) b.records.push_back({index, p, e, 0.0});
  return b;
}

ExperimentLog log_of(std::string algorithm, std::vector<ProblemBlock> blocks,
                     std::uint64_t k = 10) {
  ExperimentLog log;
  log.meta.algorithm = std::move(algorithm);
  log.meta.budget_multiplier = k;
  log.blocks = std::move(blocks);
  return log;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("hand-checked ERT: runs of 10, 20 and 30 evaluations, one success") {
  const std::vector<double> target = {1e-1};
  const std::vector<ExperimentLog> logs = {log_of(
      "a", {block(0, 1, 2, 10, {{1e-1, 10}}), block(1, 1, 2, 20, {}), block(2, 1, 2, 30, {})})};
  const auto t = compute_ert(logs, target);
  REQUIRE(t.entries.size() == 1);
  CHECK(t.entries[0].ert == 60.0);
  CHECK(t.entries[0].successes == 1);
  CHECK(t.entries[0].runs == 3);
}

TEST_CASE("ERT equals the common runtime when every run succeeds, infinite when none does") {
  const std::vector<double> targets = {1.0, 1e-1};
  const std::vector<ExperimentLog> logs = {log_of(
      "a", {block(0, 1, 2, 40, {{1.0, 7}}), block(1, 1, 2, 50, {{1.0, 7}}),
            block(2, 1, 2, 60, {{1.0, 7}})})};
  const auto t = compute_ert(logs, targets);
  REQUIRE(t.entries.size() == 2);
  CHECK(t.entries[0].ert == 7.0);
  CHECK(t.entries[1].successes == 0);
  CHECK(std::isinf(t.entries[1].ert));
}

TEST_CASE("ECDF steps at distinct runtimes") {
  // two problems x two targets: runtimes {3, 3} solved, one at 7, one never
  const std::vector<double> targets = {1.0, 1e-1};
  const std::vector<ExperimentLog> logs = {
      log_of("a", {block(0, 1, 2, 9, {{1.0, 3}, {1e-1, 3}}), block(1, 1, 2, 9, {{1.0, 7}})})};
  const auto raw = compute_ecdf(logs, targets, false);
  REQUIRE(raw.size() == 1);
  CHECK(raw[0].x == std::vector<double>{3, 7});
  CHECK(raw[0].y == std::vector<double>{0.5, 0.75});
  CHECK(raw[0].solved_pairs == 3);
  CHECK(raw[0].total_pairs == 4);
  const auto scaled = compute_ecdf(logs, targets, true);
  CHECK(scaled[0].x == std::vector<double>{1.5, 3.5});
  CHECK(scaled[0].y == raw[0].y);
}

TEST_CASE("ECDF reaches one when every pair is solved") {
  const std::vector<double> targets = {1.0};
  const std::vector<ExperimentLog> logs = {
      log_of("a", {block(0, 1, 3, 9, {{1.0, 3}}), block(1, 1, 3, 9, {{1.0, 7}})})};
  const auto c = compute_ecdf(logs, targets, false);
  CHECK(c[0].x == std::vector<double>{3, 7});
  CHECK(c[0].y == std::vector<double>{0.5, 1.0});
}

TEST_CASE("empty inputs") {
  const std::vector<ExperimentLog> none;
  const auto targets = default_target_precisions();
  CHECK_THROWS_AS(compute_ecdf(none, targets, true), ContractViolation);
  const std::vector<ExperimentLog> blank = {log_of("a", {})};
  CHECK(compute_ecdf(blank, targets, true).empty());
  CHECK(compute_ert(blank, targets).entries.empty());
  const std::vector<double> rising = {1e-3, 1.0};
  CHECK_THROWS_AS(compute_ert(blank, rising), ContractViolation);
}

TEST_CASE("fast paths agree exactly with the naive reference on randomized logs") {
  const auto targets = default_target_precisions();
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    CAPTURE(seed);
    const auto logs = synthetic::logs(seed);
    for (bool normalize : {true, false}) {
      const auto fast = compute_ecdf(logs, targets, normalize);
      const auto slow = oracle::naive_ecdf(logs, targets, normalize);
      REQUIRE(fast.size() == slow.size());
      for (const auto& c : fast) {
        const auto& n = slow.at({c.algorithm, c.dimension});
        CHECK(c.x == n.x);
        CHECK(c.y == n.y);
        CHECK(c.solved_pairs == n.solved);
        CHECK(c.total_pairs == n.total);
      }
    }
    const auto fast = compute_ert(logs, targets);
    const auto slow = oracle::naive_ert(logs, targets);
    REQUIRE(fast.entries.size() == slow.size());
    for (const auto& e : fast.entries) {
      const auto& n = slow.at({e.algorithm, e.function_id, e.dimension, e.target});
      CHECK(e.ert == n.ert);
      CHECK(e.successes == n.successes);
      CHECK(e.runs == n.runs);
    }
  }
}

TEST_CASE("budget comparison warns on differing multipliers") {
  const std::vector<ExperimentLog> logs = {log_of("a", {}, 30), log_of("a", {}, 3),
                                           log_of("b", {}, 10)};
  const auto c = compare_budgets(logs);
  CHECK(c.minimal_multiplier ==
        std::vector<std::pair<std::string, std::uint64_t>>{{"a", 3}, {"b", 10}});
  REQUIRE(c.warnings.size() == 1);
  CHECK(c.warnings[0].find("3n") != std::string::npos);
  const std::vector<ExperimentLog> same = {log_of("a", {}, 10), log_of("b", {}, 10)};
  CHECK(compare_budgets(same).warnings.empty());
}

TEST_CASE("report files are deterministic") {
  const auto logs = synthetic::logs(7);
  const auto targets = default_target_precisions();
  const auto dir = std::filesystem::temp_directory_path() / "blackbench_report_test";
  std::filesystem::remove_all(dir);
  auto emit = [&](const std::filesystem::path& out) {
    const auto curves = compute_ecdf(logs, targets, true);
    return emit_report(compute_ert(logs, targets), curves, compare_budgets(logs), out);
  };
  const auto first = emit(dir / "one");
  const auto second = emit(dir / "two");
  REQUIRE(first.size() == second.size());
  CHECK(first.back().filename() == "summary.txt");
  CHECK(first[first.size() - 2].filename() == "ert.csv");
  for (std::size_t i = 0; i < first.size(); ++i) {
    CHECK(first[i].filename() == second[i].filename());
    CHECK(slurp(first[i]) == slurp(second[i]));
  }
  const auto ert = slurp(dir / "one" / "ert.csv");
  CHECK(ert.rfind("algorithm,function,dimension,target,ert,successes,runs\n", 0) == 0);
  std::filesystem::remove_all(dir);
}

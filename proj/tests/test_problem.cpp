#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <regex>

#include "blackbench/errors.hpp"
#include "blackbench/record.hpp"
#include "blackbench/suite.hpp"
#include "blackbench/targets.hpp"

using namespace blackbench;

namespace {

Problem identity_sphere(std::size_t n) {
  ProblemDescriptor d;
  d.function_id = 1;
  d.instance_id = 1;
  d.dimension = n;
  d.x_opt.assign(n, 0.0);
  d.f_opt = 0.0;
  d.target_precisions = default_target_precisions();
  auto [lo, hi] = domain_of_interest(n);
  return Problem(std::move(d), lo, hi);
}

}  // namespace

TEST_CASE("evaluate on the identity sphere") {
  Problem p = identity_sphere(2);
  CHECK(p.evaluations() == 0);
  CHECK(p.evaluate(std::vector<double>{0, 0}) == 0.0);
  CHECK(p.evaluations() == 1);
  CHECK(p.evaluate(std::vector<double>{1, 1}) == 2.0);
  CHECK(p.evaluations() == 2);
  CHECK(p.best_f() == 0.0);
}

TEST_CASE("evaluate matches a straight-line shift + sphere + offset") {
  const auto layout = mini_bbob_layout();
  Problem p = build_problem(layout, 0, 1);
  const auto x0 = p.initial_solution();
  const auto& d = p.descriptor();
  double expected = 0.0;
  for (std::size_t i = 0; i < 2; ++i) expected += (x0[i] - d.x_opt[i]) * (x0[i] - d.x_opt[i]);
  expected += d.f_opt;
  CHECK(p.evaluate(x0) == expected);
  CHECK(p.evaluate(d.x_opt) == d.f_opt);

  // golden x_opt / f_opt of f1 instance 1, n=2, base seed 0
  Problem g = build_problem(layout, 0, 0);
  const double gx0 = -1.2996383792312862, gx1 = 0.3560266979454241;
  CHECK(g.evaluate(std::vector<double>{0, 0}) == gx0 * gx0 + gx1 * gx1 + 6.33);
}

TEST_CASE("bad input is a contract violation and costs nothing") {
  Problem p = identity_sphere(3);
  CHECK_THROWS_AS(p.evaluate(std::vector<double>{0, 0}), ContractViolation);
  CHECK_THROWS_AS(p.evaluate(std::vector<double>{0, 0, 0, 0}), ContractViolation);
  CHECK_THROWS_AS(p.evaluate(std::vector<double>{0, std::nan(""), 0}), ContractViolation);
  CHECK_THROWS_AS(
      p.evaluate(std::vector<double>{0, 0, std::numeric_limits<double>::infinity()}),
      ContractViolation);
  CHECK(p.evaluations() == 0);
  CHECK(std::isinf(p.best_f()));
  CHECK(p.hit_log().empty());
}

TEST_CASE("evaluation outside the domain of interest is allowed") {
  Problem p = identity_sphere(2);
  CHECK(p.evaluate(std::vector<double>{10, 0}) == 100.0);
}

TEST_CASE("constraints are unsupported on shipped problems") {
  Problem p = build_problem(mini_bbob_layout(), 105, 1);
  CHECK(p.num_constraints() == 0);
  for (int i = 0; i < 3; ++i)
    CHECK_THROWS_AS(p.evaluate_constraint(p.initial_solution()), UnsupportedOperation);
  CHECK(p.constraint_evaluations() == 0);
  CHECK(p.evaluations() == 0);
}

TEST_CASE("final_target_hit") {
  Problem p = identity_sphere(1);
  CHECK_FALSE(p.final_target_hit());
  // f = 1e-7 lies above the final precision 1e-8
  p.evaluate(std::vector<double>{std::sqrt(1e-7)});
  CHECK(p.best_f() == doctest::Approx(1e-7));
  CHECK_FALSE(p.final_target_hit());
  p.evaluate(std::vector<double>{0.0});
  CHECK(p.final_target_hit());
  p.evaluate(std::vector<double>{3.0});
  CHECK(p.final_target_hit());
}

TEST_CASE("hit log records each precision once at its first hit") {
  Problem p = identity_sphere(1);
  p.evaluate(std::vector<double>{std::sqrt(50.0)});  // f = 50
  const auto& t = default_target_precisions();
  REQUIRE(p.hit_log().size() == 2);  // 100 and 63.1
  CHECK(p.hit_log()[0].precision == t[0]);
  CHECK(p.hit_log()[1].precision == t[1]);
  p.evaluate(std::vector<double>{9.0});  // 81, no new hits
  const auto size = p.hit_log().size();
  p.evaluate(std::vector<double>{9.0});
  CHECK(p.hit_log().size() == size);
  p.evaluate(std::vector<double>{0.0});
  CHECK(p.hit_log().size() == t.size());
  CHECK(p.hit_log().back().evaluations == 4);
}

TEST_CASE("algorithm view") {
  Problem p = build_problem(mini_bbob_layout(), suite_index(mini_bbob_layout(), 2, 3, 4), 1);
  const auto v = p.algorithm_view(15);
  CHECK(v.dimension == 5);
  CHECK(v.num_objectives == 1);
  CHECK(v.num_constraints == 0);
  CHECK(v.lower_bounds == std::vector<double>(5, -5.0));
  CHECK(v.upper_bounds == std::vector<double>(5, 5.0));
  CHECK(v.initial_solution == std::vector<double>(5, 0.0));
  CHECK(v.budget_hint == std::optional<std::uint64_t>(15));
}

TEST_CASE("views do not depend on function or instance") {
  const auto layout = mini_bbob_layout();
  for (std::size_t d = 0; d < layout.dimensions.size(); ++d) {
    const auto reference = build_problem(layout, suite_index(layout, d, 1, 0), 1).algorithm_view(9);
    for (int f : {2, 3, 8})
      for (std::size_t i : {0ul, 7ul, 14ul})
        CHECK(build_problem(layout, suite_index(layout, d, f, i), 99).algorithm_view(9) ==
              reference);
  }
}

TEST_CASE("serialized view carries only the allowed fields") {
  const auto layout = mini_bbob_layout();
  const std::regex forbidden("function|instance|index|opt", std::regex::icase);
  for (std::size_t index : {0ul, 105ul, 1905ul}) {
    Problem p = build_problem(layout, index, 1);
    for (auto hint : {std::optional<std::uint64_t>{}, std::optional<std::uint64_t>{42}}) {
      const Record r = parse_record(serialize_view(p.algorithm_view(hint)), 1);
      std::vector<std::string> keys;
      for (const auto& [k, v] : r.items()) {
        CHECK_FALSE(std::regex_search(k, forbidden));
        keys.push_back(k);
      }
      std::vector<std::string> expected{"kind",         "dimension",    "num_objectives",
                                        "num_constraints", "lower_bounds", "upper_bounds",
                                        "initial_solution"};
      if (hint) expected.push_back("budget_hint");
      CHECK(keys == expected);
    }
  }
}

TEST_CASE("randomized counter, best and hit-log properties") {
  const auto layout = mini_bbob_layout();
  const auto indices = implemented_indices(layout);
  std::mt19937_64 gen(20240601);
  for (int c = 0; c < 300; ++c) {
    Problem p = build_problem(layout, indices[gen() % indices.size()], gen());
    const auto& d = p.descriptor();
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    const double scale = std::pow(10.0, std::uniform_real_distribution<double>(-6, 1)(gen));
    const int evals = 1 + static_cast<int>(gen() % 60);
    double running_min = std::numeric_limits<double>::infinity();
    bool hit_before = false;
    std::vector<double> fs;
    for (int e = 0; e < evals; ++e) {
      std::vector<double> x = d.x_opt;
      for (double& v : x) v += scale * unit(gen) * (gen() % 4 == 0 ? 0.0 : 1.0);
      const double f = p.evaluate(x);
      fs.push_back(f);
      running_min = std::min(running_min, f);
      CHECK(p.evaluations() == static_cast<std::uint64_t>(e + 1));
      CHECK(p.best_f() == running_min);
      if (hit_before) CHECK(p.final_target_hit());
      hit_before = p.final_target_hit();
    }
    const auto& hits = p.hit_log();
    for (std::size_t k = 0; k < hits.size(); ++k) {
      if (k > 0) {
        CHECK(hits[k].precision < hits[k - 1].precision);
        CHECK(hits[k].evaluations >= hits[k - 1].evaluations);
      }
      // the recorded evaluation reached the target and none before it did
      const auto e = hits[k].evaluations;
      CHECK(fs[e - 1] <= d.f_opt + hits[k].precision);
      for (std::uint64_t j = 1; j < e; ++j) CHECK(fs[j - 1] > d.f_opt + hits[k].precision);
    }
  }
}

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <string>
#include <utility>
#include <vector>

#include "blackbench/problem.hpp"

namespace blackbench {

/// dimensions x function slots x instances, dimension-major.
struct SuiteLayout {
  std::string name;
  std::vector<int> dimensions;
  std::vector<int> function_ids;
  std::vector<int> instances;

  std::size_t problem_count() const noexcept {
    return dimensions.size() * function_ids.size() * instances.size();
  }

  bool operator==(const SuiteLayout&) const = default;
};

/// Position of a problem inside a layout, by rank along each axis.
struct ProblemCoordinates {
  std::size_t dimension_rank = 0;
  std::size_t function_rank = 0;
  std::size_t instance_rank = 0;

  bool operator==(const ProblemCoordinates&) const = default;
};

/// Dimensions 2,3,5,10,20,40; function slots 1..24 (1, 2, 3 and 8
/// implemented); instances 1..15.
SuiteLayout mini_bbob_layout();

/// Resolves a built-in suite name. Throws ContractViolation if unknown.
SuiteLayout suite_by_name(const std::string& name);

/// Reads the key/value suite definition format:
///
///   # comment
///   name = my-suite
///   dimensions = 2, 3, 5
///   functions = 1-24
///   instances = 15
///
/// `functions` accepts comma lists and inclusive ranges; `instances` is a
/// count (ids 1..count).
SuiteLayout parse_suite_definition(std::istream& in);
SuiteLayout load_suite_definition(const std::filesystem::path& path);

/// index = d |F| |I| + rank(f) |I| + i. Throws ContractViolation when any
/// coordinate is outside the layout.
std::size_t suite_index(const SuiteLayout& layout, std::size_t dimension_rank, int function_id,
                        std::size_t instance_rank);

ProblemCoordinates decompose_index(const SuiteLayout& layout, std::size_t index);

/// Implemented problem indices, ascending.
std::vector<std::size_t> implemented_indices(const SuiteLayout& layout);

/// ([-5]^n, [5]^n), shared by every shipped problem.
std::pair<std::vector<double>, std::vector<double>> domain_of_interest(std::size_t dimension);

/// Deterministic instance parameters. seed = base_seed ^ (1000003 f + 10007 instance + n);
/// n uniform draws in [-4, 4] give x_opt, one more draw in [-100, 100]
/// rounded to two decimals gives f_opt. Throws NotImplemented for empty slots.
ProblemDescriptor describe_problem(const SuiteLayout& layout, std::size_t index,
                                   std::uint64_t base_seed);

Problem build_problem(const SuiteLayout& layout, std::size_t index, std::uint64_t base_seed);

}  // namespace blackbench

#include "blackbench/suite.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "blackbench/errors.hpp"
#include "blackbench/functions.hpp"
#include "blackbench/rng.hpp"
#include "blackbench/targets.hpp"

namespace blackbench {

SuiteLayout mini_bbob_layout() {
  SuiteLayout layout;
  layout.name = "mini-bbob";
  layout.dimensions = {2, 3, 5, 10, 20, 40};
  for (int f = 1; f <= 24; ++f) layout.function_ids.push_back(f);
  for (int i = 1; i <= 15; ++i) layout.instances.push_back(i);
  return layout;
}

SuiteLayout suite_by_name(const std::string& name) {
  if (name == "mini-bbob") return mini_bbob_layout();
  throw ContractViolation("unknown suite '" + name + "'");
}

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

int parse_positive(std::string_view token, std::size_t line) {
  const std::string t = trim(token);
  int value = 0;
  const auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc{} || end != t.data() + t.size() || t.empty() || value <= 0)
    throw ParseError(line, "expected a positive integer, got '" + t + "'");
  return value;
}

std::vector<int> parse_int_list(std::string_view value, std::size_t line) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos <= value.size()) {
    const auto comma = std::min(value.find(',', pos), value.size());
    const std::string_view item = value.substr(pos, comma - pos);
    if (const auto dash = item.find('-'); dash != std::string_view::npos) {
      const int lo = parse_positive(item.substr(0, dash), line);
      const int hi = parse_positive(item.substr(dash + 1), line);
      if (hi < lo) throw ParseError(line, "descending range '" + trim(item) + "'");
      for (int v = lo; v <= hi; ++v) out.push_back(v);
    } else {
      out.push_back(parse_positive(item, line));
    }
    pos = comma + 1;
  }
  return out;
}

void require_strictly_ascending(const std::vector<int>& v, const char* what) {
  if (v.empty()) throw ContractViolation(std::string("suite needs at least one ") + what);
  if (std::adjacent_find(v.begin(), v.end(), std::greater_equal<>()) != v.end())
    throw ContractViolation(std::string("suite ") + what + " must be strictly ascending");
}

}  // namespace

SuiteLayout parse_suite_definition(std::istream& in) {
  SuiteLayout layout;
  bool has_name = false, has_dims = false, has_functions = false, has_instances = false;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string content = trim(line.substr(0, line.find('#')));
    if (content.empty()) continue;
    const auto eq = content.find('=');
    if (eq == std::string::npos) throw ParseError(number, "expected 'key = value'");
    const std::string key = trim(std::string_view(content).substr(0, eq));
    const std::string value = trim(std::string_view(content).substr(eq + 1));
    if (key == "name") {
      if (value.empty()) throw ParseError(number, "empty suite name");
      layout.name = value;
      has_name = true;
    } else if (key == "dimensions") {
      layout.dimensions = parse_int_list(value, number);
      has_dims = true;
    } else if (key == "functions") {
      layout.function_ids = parse_int_list(value, number);
      has_functions = true;
    } else if (key == "instances") {
      const int count = parse_positive(value, number);
      layout.instances.clear();
      for (int i = 1; i <= count; ++i) layout.instances.push_back(i);
      has_instances = true;
    } else {
      throw ParseError(number, "unknown key '" + key + "'");
    }
  }
  if (!(has_name && has_dims && has_functions && has_instances))
    throw ParseError(number, "suite definition needs name, dimensions, functions and instances");
  require_strictly_ascending(layout.dimensions, "dimensions");
  require_strictly_ascending(layout.function_ids, "functions");
  return layout;
}

SuiteLayout load_suite_definition(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open suite definition " + path.string());
  return parse_suite_definition(in);
}

std::size_t suite_index(const SuiteLayout& layout, std::size_t dimension_rank, int function_id,
                        std::size_t instance_rank) {
  if (dimension_rank >= layout.dimensions.size())
    throw ContractViolation("dimension rank " + std::to_string(dimension_rank) + " out of range");
  const auto it = std::ranges::find(layout.function_ids, function_id);
  if (it == layout.function_ids.end())
    throw ContractViolation("function " + std::to_string(function_id) + " not in suite");
  if (instance_rank >= layout.instances.size())
    throw ContractViolation("instance rank " + std::to_string(instance_rank) + " out of range");
  const auto function_rank = static_cast<std::size_t>(it - layout.function_ids.begin());
  const std::size_t nf = layout.function_ids.size();
  const std::size_t ni = layout.instances.size();
  return dimension_rank * nf * ni + function_rank * ni + instance_rank;
}

ProblemCoordinates decompose_index(const SuiteLayout& layout, std::size_t index) {
  if (index >= layout.problem_count())
    throw ContractViolation("suite index " + std::to_string(index) + " out of range");
  const std::size_t nf = layout.function_ids.size();
  const std::size_t ni = layout.instances.size();
  return {index / (nf * ni), (index / ni) % nf, index % ni};
}

std::vector<std::size_t> implemented_indices(const SuiteLayout& layout) {
  std::vector<std::size_t> out;
  for (std::size_t index = 0; index < layout.problem_count(); ++index) {
    const auto c = decompose_index(layout, index);
    if (function_implemented(layout.function_ids[c.function_rank])) out.push_back(index);
  }
  return out;
}

std::pair<std::vector<double>, std::vector<double>> domain_of_interest(std::size_t dimension) {
  return {std::vector<double>(dimension, -5.0), std::vector<double>(dimension, 5.0)};
}

ProblemDescriptor describe_problem(const SuiteLayout& layout, std::size_t index,
                                   std::uint64_t base_seed) {
  const auto c = decompose_index(layout, index);
  ProblemDescriptor d;
  d.function_id = layout.function_ids[c.function_rank];
  d.instance_id = layout.instances[c.instance_rank];
  d.dimension = static_cast<std::size_t>(layout.dimensions[c.dimension_rank]);
  d.suite_index = index;
  if (!function_implemented(d.function_id))
    throw NotImplemented("suite slot " + std::to_string(index) + " (function " +
                         std::to_string(d.function_id) + ") has no definition");

  const std::uint64_t mix = 1000003ull * static_cast<std::uint64_t>(d.function_id) +
                            10007ull * static_cast<std::uint64_t>(d.instance_id) +
                            static_cast<std::uint64_t>(d.dimension);
  Rng64 rng(base_seed ^ mix);
  d.x_opt.resize(d.dimension);
  for (double& v : d.x_opt) v = rng.uniform(-4.0, 4.0);
  d.f_opt = std::round(rng.uniform(-100.0, 100.0) * 100.0) / 100.0;
  d.target_precisions = default_target_precisions();
  return d;
}

Problem build_problem(const SuiteLayout& layout, std::size_t index, std::uint64_t base_seed) {
  ProblemDescriptor d = describe_problem(layout, index, base_seed);
  auto [lower, upper] = domain_of_interest(d.dimension);
  return Problem(std::move(d), std::move(lower), std::move(upper));
}

}  // namespace blackbench

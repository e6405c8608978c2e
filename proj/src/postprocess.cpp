#include "blackbench/postprocess.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <tuple>

#include "blackbench/errors.hpp"
#include "blackbench/record.hpp"

namespace blackbench {

namespace {


/// First-hit evaluations of `block` for each target, 0 when not hit.
std::vector<std::uint64_t> hits_per_target(const ProblemBlock& block,
                                           std::span<const double> targets) {
  std::vector<std::uint64_t> out(targets.size(), 0);
  // records and targets are both sorted by descending precision
  std::size_t r = 0;
  for (std::size_t t = 0; t < targets.size() && r < block.records.size();) {
    const double p = block.records[r].target_precision;
    if (p == targets[t]) {
      out[t] = block.records[r].evaluations;
      ++t;
      ++r;
    } else if (p > targets[t]) {
      ++r;
    } else {
      ++t;
    }
  }
  return out;
}

void require_descending(std::span<const double> targets) {
  for (std::size_t i = 1; i < targets.size(); ++i)
    if (!(targets[i] < targets[i - 1]))
      throw ContractViolation("targets must be strictly decreasing");
}

}  // namespace

std::vector<EcdfCurve> compute_ecdf(std::span<const ExperimentLog> logs,
                                    std::span<const double> targets,
                                    bool normalize_by_dimension) {
  if (logs.empty()) throw ContractViolation("compute_ecdf needs at least one log");
  require_descending(targets);

  std::map<std::pair<std::string, std::size_t>, std::vector<const ProblemBlock*>> groups;
  for (const auto& log : logs)
    for (const auto& b : log.blocks) groups[{log.meta.algorithm, b.dimension}].push_back(&b);

  std::vector<EcdfCurve> curves;
  for (const auto& [key, blocks] : groups) {
    EcdfCurve c;
    c.algorithm = key.first;
    c.dimension = key.second;
    c.targets.assign(targets.begin(), targets.end());
    c.normalized = normalize_by_dimension;
    c.total_pairs = blocks.size() * targets.size();

    std::vector<std::uint64_t> runtimes;
    for (const ProblemBlock* b : blocks)
      for (std::uint64_t e : hits_per_target(*b, targets))
        if (e > 0) runtimes.push_back(e);
    std::ranges::sort(runtimes);
    c.solved_pairs = runtimes.size();

    const double scale = normalize_by_dimension ? static_cast<double>(c.dimension) : 1.0;
    for (std::size_t i = 0; i < runtimes.size(); ++i) {
      if (i + 1 < runtimes.size() && runtimes[i + 1] == runtimes[i]) continue;
      c.x.push_back(static_cast<double>(runtimes[i]) / scale);
      c.y.push_back(static_cast<double>(i + 1) / static_cast<double>(c.total_pairs));
    }
    curves.push_back(std::move(c));
  }
  return curves;
}

ErtTable compute_ert(std::span<const ExperimentLog> logs, std::span<const double> targets) {
  require_descending(targets);
  std::map<std::tuple<std::string, int, std::size_t>, std::vector<const ProblemBlock*>> groups;
  for (const auto& log : logs)
    for (const auto& b : log.blocks)
      groups[{log.meta.algorithm, b.function_id, b.dimension}].push_back(&b);

  ErtTable table;
  for (const auto& [key, blocks] : groups) {
    std::vector<double> spent(targets.size(), 0.0);
    std::vector<std::size_t> successes(targets.size(), 0);
    for (const ProblemBlock* b : blocks) {
      const auto hits = hits_per_target(*b, targets);
      for (std::size_t t = 0; t < targets.size(); ++t) {
        if (hits[t] > 0) {
          spent[t] += static_cast<double>(hits[t]);
          ++successes[t];
        } else {
          spent[t] += static_cast<double>(b->summary.evaluations);
        }
      }
    }
    for (std::size_t t = 0; t < targets.size(); ++t) {
      ErtEntry e;
      std::tie(e.algorithm, e.function_id, e.dimension) = key;
      e.target = targets[t];
      e.successes = successes[t];
      e.runs = blocks.size();
      e.ert = successes[t] > 0 ? spent[t] / static_cast<double>(successes[t])
                               : std::numeric_limits<double>::infinity();
      table.entries.push_back(std::move(e));
    }
  }
  return table;
}

BudgetComparison compare_budgets(std::span<const ExperimentLog> logs) {
  std::map<std::string, std::uint64_t> minimal;
  for (const auto& log : logs) {
    auto [it, inserted] = minimal.try_emplace(log.meta.algorithm, log.meta.budget_multiplier);
    if (!inserted) it->second = std::min(it->second, log.meta.budget_multiplier);
  }
  BudgetComparison out;
  out.minimal_multiplier.assign(minimal.begin(), minimal.end());
  for (std::size_t i = 0; i < out.minimal_multiplier.size(); ++i) {
    for (std::size_t j = i + 1; j < out.minimal_multiplier.size(); ++j) {
      const auto& [a, ka] = out.minimal_multiplier[i];
      const auto& [b, kb] = out.minimal_multiplier[j];
      if (ka != kb)
        out.warnings.push_back("budgets differ: " + a + " ran with " + std::to_string(ka) +
                               "n, " + b + " with " + std::to_string(kb) + "n; compare only up to " +
                               std::to_string(std::min(ka, kb)) + "n evaluations");
    }
  }
  return out;
}

namespace {

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError("write to " + path.string() + " failed");
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

}  // namespace

std::vector<std::filesystem::path> emit_report(const ErtTable& table,
                                               std::span<const EcdfCurve> curves,
                                               const BudgetComparison& budgets,
                                               const std::filesystem::path& output_dir) {
  std::error_code ec;
  std::filesystem::create_directories(output_dir, ec);
  if (ec) throw IoError("cannot create " + output_dir.string() + ": " + ec.message());

  std::vector<std::filesystem::path> written;

  std::set<std::size_t> dimensions;
  for (const auto& c : curves) dimensions.insert(c.dimension);
  for (std::size_t d : dimensions) {
    const auto path = output_dir / ("ecdf_dim" + std::to_string(d) + ".csv");
    auto out = open_for_write(path);
    out << "algorithm,x,y\n";
    for (const auto& c : curves) {
      if (c.dimension != d) continue;
      for (std::size_t i = 0; i < c.x.size(); ++i)
        out << csv_field(c.algorithm) << ',' << format_real(c.x[i]) << ','
            << format_real(c.y[i]) << '\n';
    }
    finish(out, path);
    written.push_back(path);
  }

  {
    const auto path = output_dir / "ert.csv";
    auto out = open_for_write(path);
    out << "algorithm,function,dimension,target,ert,successes,runs\n";
    for (const auto& e : table.entries)
      out << csv_field(e.algorithm) << ',' << e.function_id << ',' << e.dimension << ','
          << format_real(e.target) << ',' << format_real(e.ert) << ',' << e.successes << ','
          << e.runs << '\n';
    finish(out, path);
    written.push_back(path);
  }

  {
    const auto path = output_dir / "summary.txt";
    auto out = open_for_write(path);
    out << "algorithm budgets (smallest multiplier k, budget k*n):\n";
    for (const auto& [name, k] : budgets.minimal_multiplier)
      out << "  " << name << ": " << k << "n\n";
    for (const auto& w : budgets.warnings) out << "WARNING: " << w << '\n';
    out << "solved (problem, target) pairs per dimension:\n";
    for (const auto& c : curves) {
      const double fraction = c.total_pairs ? static_cast<double>(c.solved_pairs) /
                                                  static_cast<double>(c.total_pairs)
                                            : 0.0;
      out << "  " << c.algorithm << " dim " << c.dimension << ": " << c.solved_pairs << "/"
          << c.total_pairs << " = " << format_real(fraction) << '\n';
    }
    finish(out, path);
    written.push_back(path);
  }
  return written;
}

}  // namespace blackbench

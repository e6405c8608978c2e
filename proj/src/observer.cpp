#include "blackbench/observer.hpp"

#include <fstream>
#include <optional>
#include <sstream>

#include "blackbench/errors.hpp"
#include "blackbench/record.hpp"
#include "blackbench/targets.hpp"

namespace blackbench {

ProblemRecorder::ProblemRecorder(Problem& problem, bool trace)
    : problem_(&problem), trace_(trace) {
  problem.attach(*this);
  const auto& d = problem.descriptor();
  block_.suite_index = d.suite_index;
  block_.function_id = d.function_id;
  block_.instance_id = d.instance_id;
  block_.dimension = d.dimension;
  block_.f_opt = d.f_opt;
  block_.x_opt = d.x_opt;
}

ProblemRecorder::~ProblemRecorder() {
  if (problem_) problem_->detach();
}

void ProblemRecorder::on_evaluation(std::uint64_t evaluation, double f) {
  if (trace_) block_.trace.push_back({evaluation, f});
}

void ProblemRecorder::on_hit(const Hit& hit) {
  block_.records.push_back({block_.suite_index, hit.precision, hit.evaluations, hit.f});
}

ProblemBlock ProblemRecorder::finish(ProblemSummary summary) {
  if (problem_) {
    problem_->detach();
    problem_ = nullptr;
  }
  block_.summary = std::move(summary);
  return std::move(block_);
}

Observer::Observer(ExperimentMeta meta, bool trace) : meta_(std::move(meta)), trace_(trace) {}

void Observer::submit(ProblemBlock block) {
  std::lock_guard lock(mutex_);
  const auto index = block.suite_index;
  if (!blocks_.try_emplace(index, std::move(block)).second)
    throw ContractViolation("problem " + std::to_string(index) + " submitted twice");
}

ExperimentLog Observer::log() const {
  std::lock_guard lock(mutex_);
  ExperimentLog log{meta_, {}};
  log.blocks.reserve(blocks_.size());
  for (const auto& [index, block] : blocks_) log.blocks.push_back(block);
  return log;
}

// ---------------------------------------------------------------------------
// Writing

namespace {

std::string meta_line(const ExperimentMeta& m) {
  RecordWriter w("meta");
  w.field("format_version", m.format_version)
      .field("suite", m.suite)
      .field("dimensions", std::span<const int>(m.layout.dimensions))
      .field("function_ids", std::span<const int>(m.layout.function_ids))
      .field("instances", std::span<const int>(m.layout.instances))
      .field("algorithm", m.algorithm)
      .field("base_seed", m.base_seed)
      .field("algorithm_seed", m.algorithm_seed)
      .field("budget_multiplier", m.budget_multiplier)
      .field("budget_schedule", std::span<const int>(m.budget_schedule))
      .field("command", m.command)
      .field("notes", m.notes)
      .field("version", m.version)
      .field("environment", std::span<const std::pair<std::string, std::string>>(m.environment));
  return w.str();
}

}  // namespace

void write_log(std::ostream& out, const ExperimentLog& log) {
  out << meta_line(log.meta) << '\n';
  for (const auto& b : log.blocks) {
    const auto index = static_cast<std::uint64_t>(b.suite_index);
    out << RecordWriter("problem")
               .field("suite_index", index)
               .field("function", b.function_id)
               .field("instance", b.instance_id)
               .field("dimension", static_cast<std::uint64_t>(b.dimension))
               .field("f_opt", b.f_opt)
               .field("x_opt", std::span<const double>(b.x_opt))
               .str()
        << '\n';
    for (const auto& r : b.records) {
      out << RecordWriter("hit")
                 .field("suite_index", index)
                 .field("precision", r.target_precision)
                 .field("evaluations", r.evaluations)
                 .field("f", r.f_observed)
                 .str()
          << '\n';
    }
    for (const auto& t : b.trace) {
      out << RecordWriter("trace")
                 .field("suite_index", index)
                 .field("evaluation", t.evaluation)
                 .field("f", t.f)
                 .str()
          << '\n';
    }
    const auto& s = b.summary;
    out << RecordWriter("problem_end")
               .field("suite_index", index)
               .field("evaluations", s.evaluations)
               .field("constraint_evaluations", s.constraint_evaluations)
               .field("best_f", s.best_f)
               .field("budget", s.budget)
               .field("restarts", s.restarts)
               .field("final_target_hit", s.final_target_hit)
               .field("status", s.status)
               .str()
        << '\n';
  }
}

void write_log(const std::filesystem::path& path, const ExperimentLog& log) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  write_log(out, log);
  out.flush();
  if (!out) throw IoError("write to " + path.string() + " failed");
}

// ---------------------------------------------------------------------------
// Reading

namespace {

void expect_index(const Record& r, std::size_t expected, std::size_t line) {
  if (read_uint(r, "suite_index", line) != expected)
    throw ParseError(line, "record belongs to a different problem than the open block");
}

}  // namespace

ExperimentLog read_log(std::istream& in) {
  ExperimentLog log;
  std::string text;
  std::size_t line_number = 0;
  bool have_meta = false;
  std::optional<ProblemBlock> open;

  while (std::getline(in, text)) {
    ++line_number;
    if (in.eof()) throw ParseError(line_number, "truncated line (no terminating newline)");
    const Record r = parse_record(text, line_number);
    const std::string kind = record_kind(r, line_number);

    if (!have_meta) {
      if (kind != "meta") throw ParseError(line_number, "first record must be 'meta'");
      auto& m = log.meta;
      m.format_version = static_cast<int>(read_int(r, "format_version", line_number));
      if (m.format_version != kLogFormatVersion)
        throw ParseError(line_number, "unsupported format_version " +
                                          std::to_string(m.format_version));
      m.suite = read_string(r, "suite", line_number);
      m.layout.name = m.suite;
      m.layout.dimensions = read_ints(r, "dimensions", line_number);
      m.layout.function_ids = read_ints(r, "function_ids", line_number);
      m.layout.instances = read_ints(r, "instances", line_number);
      m.algorithm = read_string(r, "algorithm", line_number);
      m.base_seed = read_uint(r, "base_seed", line_number);
      m.algorithm_seed = read_uint(r, "algorithm_seed", line_number);
      m.budget_multiplier = read_uint(r, "budget_multiplier", line_number);
      m.budget_schedule = read_ints(r, "budget_schedule", line_number);
      m.command = read_string(r, "command", line_number);
      m.notes = read_string(r, "notes", line_number);
      m.version = read_string(r, "version", line_number);
      m.environment = read_string_map(r, "environment", line_number);
      have_meta = true;
      continue;
    }

    if (kind == "meta") {
      throw ParseError(line_number, "duplicate 'meta' record");
    } else if (kind == "problem") {
      if (open) throw ParseError(line_number, "problem block opened before previous one ended");
      ProblemBlock b;
      b.suite_index = read_uint(r, "suite_index", line_number);
      b.function_id = static_cast<int>(read_int(r, "function", line_number));
      b.instance_id = static_cast<int>(read_int(r, "instance", line_number));
      b.dimension = read_uint(r, "dimension", line_number);
      b.f_opt = read_real(r, "f_opt", line_number);
      b.x_opt = read_reals(r, "x_opt", line_number);
      open = std::move(b);
    } else if (kind == "hit") {
      if (!open) throw ParseError(line_number, "'hit' outside a problem block");
      expect_index(r, open->suite_index, line_number);
      open->records.push_back({open->suite_index, read_real(r, "precision", line_number),
                               read_uint(r, "evaluations", line_number),
                               read_real(r, "f", line_number)});
    } else if (kind == "trace") {
      if (!open) throw ParseError(line_number, "'trace' outside a problem block");
      expect_index(r, open->suite_index, line_number);
      open->trace.push_back(
          {read_uint(r, "evaluation", line_number), read_real(r, "f", line_number)});
    } else if (kind == "problem_end") {
      if (!open) throw ParseError(line_number, "'problem_end' outside a problem block");
      expect_index(r, open->suite_index, line_number);
      auto& s = open->summary;
      s.evaluations = read_uint(r, "evaluations", line_number);
      s.constraint_evaluations = read_uint(r, "constraint_evaluations", line_number);
      s.best_f = read_real(r, "best_f", line_number);
      s.budget = read_uint(r, "budget", line_number);
      s.restarts = read_uint(r, "restarts", line_number);
      s.final_target_hit = read_bool(r, "final_target_hit", line_number);
      s.status = read_string(r, "status", line_number);
      log.blocks.push_back(std::move(*open));
      open.reset();
    } else {
      throw ParseError(line_number, "unknown record kind '" + kind + "'");
    }
  }
  if (!have_meta) throw ParseError(line_number + 1, "empty log (no 'meta' record)");
  if (open) throw ParseError(line_number, "log ends inside problem block");
  return log;
}

ExperimentLog read_log(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return read_log(in);
}

std::vector<std::string> validate_log(const ExperimentLog& log) {
  std::vector<std::string> issues;
  auto issue = [&](std::size_t index, const std::string& what) {
    issues.push_back("problem " + std::to_string(index) + ": " + what);
  };
  const std::size_t count = log.meta.layout.problem_count();
  for (std::size_t k = 0; k < log.blocks.size(); ++k) {
    const auto& b = log.blocks[k];
    if (k > 0 && b.suite_index <= log.blocks[k - 1].suite_index)
      issue(b.suite_index, "blocks not strictly ordered by suite index");
    if (b.suite_index >= count) issue(b.suite_index, "suite index outside the layout");
    if (b.x_opt.size() != b.dimension) issue(b.suite_index, "x_opt length differs from dimension");
    for (std::size_t j = 0; j < b.records.size(); ++j) {
      const auto& r = b.records[j];
      if (!(r.target_precision > 0.0)) issue(b.suite_index, "non-positive target precision");
      if (r.evaluations == 0 || r.evaluations > b.summary.evaluations)
        issue(b.suite_index, "hit evaluation count outside 1..total");
      if (!(r.f_observed <= b.f_opt + r.target_precision))
        issue(b.suite_index, "hit value does not reach its target");
      if (j > 0) {
        const auto& prev = b.records[j - 1];
        if (!(r.target_precision < prev.target_precision))
          issue(b.suite_index, "hit precisions not strictly decreasing");
        if (r.evaluations < prev.evaluations)
          issue(b.suite_index, "hit evaluation counts decrease");
      }
    }
    for (std::size_t j = 0; j < b.trace.size(); ++j) {
      if (b.trace[j].evaluation != j + 1) {
        issue(b.suite_index, "trace is not a contiguous evaluation sequence");
        break;
      }
    }
    if (!b.trace.empty() && b.trace.size() != b.summary.evaluations)
      issue(b.suite_index, "trace length differs from evaluation total");
    if (b.summary.evaluations > b.summary.budget)
      issue(b.suite_index, "evaluations exceed the budget");
    if (b.summary.final_target_hit &&
        (b.records.empty() || b.records.back().target_precision != kFinalPrecision))
      issue(b.suite_index, "final target flagged without a final-precision hit");
  }
  return issues;
}

}  // namespace blackbench

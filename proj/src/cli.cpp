#include "blackbench/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "blackbench/environment.hpp"
#include "blackbench/errors.hpp"
#include "blackbench/postprocess.hpp"
#include "blackbench/record.hpp"
#include "blackbench/runner.hpp"
#include "blackbench/targets.hpp"
#include "blackbench/timing.hpp"

namespace blackbench {

namespace {

namespace fs = std::filesystem;

/// Usage problems detected after CLI11 has parsed successfully.
class UsageError : public Error {
 public:
  using Error::Error;
};

struct CommonOptions {
  std::string suite = "mini-bbob";
  std::string suite_file;
  std::string algorithm = "random-search";
  std::uint64_t base_seed = 1;
  std::uint64_t algorithm_seed = 1;
  std::string out;
  unsigned threads = 1;
};

struct RunOptions {
  std::string algorithm_cmd;
  std::string budget = "3,10,30,100,300";
  std::vector<int> dims, functions, instances;
  bool debug_trace = false;
  std::string notes;
  double timeout_seconds = 60.0;
};

struct TimingCliOptions {
  std::vector<int> dims;
  bool baseline = false;
  bool legacy_f8 = false;
  double min_seconds = 1.0;
  std::uint64_t budget = 100;
};

struct PostprocessOptions {
  std::vector<std::string> logs;
  bool no_normalize = false;
};

fs::path output_dir(const CommonOptions& o) {
  if (!o.out.empty()) return o.out;
  if (const char* env = std::getenv("BLACKBENCH_OUT"); env && *env) return env;
  return "blackbench-output";
}

SuiteLayout resolve_suite(const CommonOptions& o) {
  if (!o.suite_file.empty()) return load_suite_definition(o.suite_file);
  try {
    return suite_by_name(o.suite);
  } catch (const ContractViolation& e) {
    throw UsageError(e.what());
  }
}

AlgorithmFactory resolve_builtin(const CommonOptions& o) {
  try {
    return builtin_algorithm(o.algorithm, o.algorithm_seed);
  } catch (const ContractViolation& e) {
    throw UsageError(e.what());
  }
}

BudgetPolicy parse_budget(const std::string& text) {
  BudgetPolicy policy;
  std::vector<std::uint64_t> ks;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    unsigned long long k = 0;
    try {
      k = std::stoull(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || k == 0 || item.empty() || item[0] == '-')
      throw UsageError("--budget expects positive integers, got '" + text + "'");
    ks.push_back(k);
  }
  if (ks.empty()) throw UsageError("--budget is empty");
  for (std::size_t i = 1; i < ks.size(); ++i)
    if (ks[i] <= ks[i - 1]) throw UsageError("--budget schedule must be ascending");
  if (ks.size() == 1) return BudgetPolicy::single(ks[0]);
  policy.mode = BudgetPolicy::Mode::kSchedule;
  policy.schedule = ks;
  policy.multiplier = ks.front();
  return policy;
}

std::string join(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

std::string shell_quote(const std::string& s) {
  if (!s.empty() && s.find_first_not_of("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"
                                        "0123456789-_./=,:") == std::string::npos)
    return s;
  std::string q = "'";
  for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return q + "'";
}

/// Canonical command reproducing the log contents. Leaves out options that
/// cannot change a single byte of the log (output dir, thread count, notes).
std::string reproduction_command(const CommonOptions& c, const RunOptions& r,
                                 const std::string& budget) {
  std::string cmd = "blackbench run";
  if (!c.suite_file.empty())
    cmd += " --suite-file " + shell_quote(c.suite_file);
  else
    cmd += " --suite " + shell_quote(c.suite);
  if (!r.algorithm_cmd.empty())
    cmd += " --algorithm-cmd " + shell_quote(r.algorithm_cmd);
  else
    cmd += " --algorithm " + shell_quote(c.algorithm);
  cmd += " --budget " + budget;
  cmd += " --seed " + std::to_string(c.base_seed);
  cmd += " --algorithm-seed " + std::to_string(c.algorithm_seed);
  if (!r.dims.empty()) cmd += " --dims " + join(r.dims);
  if (!r.functions.empty()) cmd += " --functions " + join(r.functions);
  if (!r.instances.empty()) cmd += " --instances " + join(r.instances);
  if (r.debug_trace) cmd += " --debug-trace";
  return cmd;
}

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string join_args(const std::vector<std::string>& args) {
  std::string s;
  for (std::size_t i = 0; i < args.size(); ++i) s += (i ? " " : "") + shell_quote(args[i]);
  return s;
}

int do_run(const CommonOptions& c, const RunOptions& r, const std::vector<std::string>& args,
           std::ostream& out) {
  const std::string started = utc_now();
  RunConfig config;
  config.layout = resolve_suite(c);
  config.filter = {r.dims, r.functions, r.instances};
  config.base_seed = c.base_seed;
  config.algorithm_seed = c.algorithm_seed;
  config.policy = parse_budget(r.budget);
  config.threads = std::max(1u, c.threads);
  config.trace = r.debug_trace;
  config.notes = r.notes;
  config.environment = capture_environment();
  config.command = reproduction_command(c, r, r.budget);

  AlgorithmSpec algorithm;
  if (!r.algorithm_cmd.empty()) {
    algorithm = ExternalAlgorithm{
        "external:" + r.algorithm_cmd, r.algorithm_cmd,
        std::chrono::milliseconds(static_cast<long long>(r.timeout_seconds * 1000.0))};
  } else {
    algorithm = resolve_builtin(c);
  }
  if (selected_indices(config).empty()) throw UsageError("no implemented problem matches the filters");

  const fs::path dir = output_dir(c);
  const auto written = run_experiment(config, algorithm, dir);

  const fs::path info = dir / "run_info.json";
  std::ofstream meta(info, std::ios::binary | std::ios::trunc);
  meta << RecordWriter("run_info")
              .field("started", started)
              .field("finished", utc_now())
              .field("argv", join_args(args))
              .field("threads", static_cast<std::uint64_t>(config.threads))
              .field("output_dir", dir.string())
              .str()
       << '\n';
  if (!meta) throw IoError("cannot write " + info.string());

  for (const auto& p : written) {
    const ExperimentLog log = read_log(p);
    std::size_t flagged = 0;
    for (const auto& b : log.blocks) flagged += b.summary.status != "ok";
    out << p.string() << ": " << log.blocks.size() << " problems";
    if (flagged) out << ", " << flagged << " flagged";
    out << '\n';
  }
  return 0;
}

int do_timing(const CommonOptions& c, const TimingCliOptions& t, std::ostream& out,
              std::ostream& err) {
  if (c.threads > 1) err << "timing: --threads ignored, measurements are single-threaded\n";
  const SuiteLayout layout = resolve_suite(c);
  const std::vector<int> dims = t.dims.empty() ? layout.dimensions : t.dims;
  for (int d : dims)
    if (std::ranges::find(layout.dimensions, d) == layout.dimensions.end())
      throw UsageError("dimension " + std::to_string(d) + " is not part of suite " + layout.name);
  if (!(t.min_seconds > 0.0)) throw UsageError("--min-seconds must be positive");

  TimingOptions options;
  options.min_seconds = t.min_seconds;
  options.budget_multiplier = t.budget;
  options.base_seed = c.base_seed;
  options.legacy_f8 = t.legacy_f8;

  const auto env = capture_environment();
  std::vector<TimingReport> reports;
  const AlgorithmFactory algorithm = resolve_builtin(c);
  reports.push_back(run_timing(layout, dims, algorithm, options, false));
  if (t.baseline)
    reports.push_back(run_timing(layout, dims, random_search(c.algorithm_seed), options, true));
  for (auto& r : reports) r.environment = env;

  const fs::path dir = output_dir(c);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  write_timing_reports(dir / "timing.log", reports);

  out << format_timing_table(reports);
  for (const auto& [k, v] : env) out << k << ": " << v << '\n';
  out << "written: " << (dir / "timing.log").string() << '\n';
  return 0;
}

int do_postprocess(const CommonOptions& c, const PostprocessOptions& p, std::ostream& out) {
  std::vector<ExperimentLog> logs;
  for (const auto& path : p.logs) {
    try {
      logs.push_back(read_log(fs::path(path)));
    } catch (const ParseError& e) {
      throw Error(path + ": " + e.what());
    }
  }
  const auto& targets = default_target_precisions();
  const auto curves = compute_ecdf(logs, targets, !p.no_normalize);
  const auto table = compute_ert(logs, targets);
  const auto budgets = compare_budgets(logs);
  const auto written = emit_report(table, curves, budgets, output_dir(c));
  for (const auto& w : budgets.warnings) out << "WARNING: " << w << '\n';
  for (const auto& path : written) out << "written: " << path.string() << '\n';
  return 0;
}

int do_validate(const std::string& path, std::ostream& out, std::ostream& err) {
  ExperimentLog log;
  try {
    log = read_log(fs::path(path));
  } catch (const ParseError& e) {
    err << path << ": " << e.what() << '\n';
    return 1;
  }
  const auto issues = validate_log(log);
  for (const auto& i : issues) err << path << ": " << i << '\n';
  if (!issues.empty()) return 1;
  std::size_t flagged = 0;
  for (const auto& b : log.blocks) flagged += b.summary.status != "ok";
  out << path << ": valid, " << log.blocks.size() << " problems, " << flagged << " flagged\n";
  return 0;
}

void add_common(CLI::App* app, CommonOptions& c, bool with_algorithm) {
  app->add_option("--suite", c.suite, "Built-in suite name")->capture_default_str();
  app->add_option("--suite-file", c.suite_file, "Suite definition file")->check(CLI::ExistingFile);
  if (with_algorithm)
    app->add_option("--algorithm", c.algorithm, "random-search | local-search-1p1")
        ->capture_default_str();
  app->add_option("--seed", c.base_seed, "Base seed of the instances")->capture_default_str();
  app->add_option("--algorithm-seed", c.algorithm_seed, "Seed of the algorithm")
      ->capture_default_str();
  app->add_option("--out", c.out, "Output directory (default $BLACKBENCH_OUT or ./blackbench-output)");
  app->add_option("--threads", c.threads, "Worker threads")->capture_default_str();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"blackbench: budget-free black-box optimization benchmarking", "blackbench"};
  app.require_subcommand(1);

  CommonOptions common;
  RunOptions run_opts;
  TimingCliOptions timing_opts;
  PostprocessOptions post_opts;
  std::string validate_path;

  auto* run = app.add_subcommand("run", "Run an algorithm on every problem of a suite");
  add_common(run, common, true);
  auto* cmd = run->add_option("--algorithm-cmd", run_opts.algorithm_cmd,
                              "Benchmark an external optimizer speaking the wire protocol");
  run->add_option("--budget", run_opts.budget, "Multiplier k (budget k*n) or ascending schedule")
      ->capture_default_str();
  run->add_option("--dims", run_opts.dims, "Only these dimensions")->delimiter(',');
  run->add_option("--functions", run_opts.functions, "Only these function ids")->delimiter(',');
  run->add_option("--instances", run_opts.instances, "Only these instance ids")->delimiter(',');
  run->add_flag("--debug-trace", run_opts.debug_trace, "Record every (evaluation, f) pair");
  run->add_option("--notes", run_opts.notes, "Free text stored in the log (e.g. tuning effort)");
  run->add_option("--timeout", run_opts.timeout_seconds,
                  "Seconds to wait for each external algorithm message")
      ->capture_default_str();
  cmd->excludes(run->get_option("--algorithm"));

  auto* timing = app.add_subcommand("timing", "Measure seconds per function evaluation");
  add_common(timing, common, true);
  timing->add_option("--dims", timing_opts.dims, "Dimensions to time")->delimiter(',');
  timing->add_flag("--baseline", timing_opts.baseline, "Also time pure random search");
  timing->add_flag("--legacy-f8", timing_opts.legacy_f8,
                   "Time only the first Rosenbrock instance per dimension");
  timing->add_option("--min-seconds", timing_opts.min_seconds, "Measured time per dimension")
      ->capture_default_str();
  timing->add_option("--budget", timing_opts.budget, "Multiplier k of each timed run")
      ->capture_default_str();

  auto* post = app.add_subcommand("postprocess", "ECDF and ERT tables from experiment logs");
  post->add_option("logs", post_opts.logs, "Experiment logs")->required()->check(CLI::ExistingFile);
  post->add_option("--out", common.out, "Output directory");
  post->add_flag("--no-normalize", post_opts.no_normalize, "Do not divide runtimes by dimension");

  auto* validate = app.add_subcommand("validate-log", "Check an experiment log");
  validate->add_option("log", validate_path, "Log file")->required();

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (run->parsed()) return do_run(common, run_opts, args, out);
    if (timing->parsed()) return do_timing(common, timing_opts, out, err);
    if (post->parsed()) return do_postprocess(common, post_opts, out);
    if (validate->parsed()) return do_validate(validate_path, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace blackbench

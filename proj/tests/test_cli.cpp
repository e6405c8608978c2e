#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "blackbench/cli.hpp"
#include "blackbench/observer.hpp"
#include "blackbench/timing.hpp"

using namespace blackbench;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args) {
  args.insert(args.begin(), "blackbench");
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("blackbench_cli_" + name);
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("usage errors exit with 2") {
  CHECK(cli({}).code == 2);
  CHECK(cli({"frobnicate"}).code == 2);
  CHECK(cli({"run", "--no-such-flag"}).code == 2);
  CHECK(cli({"run", "--algorithm", "random-search", "--algorithm-cmd", "x"}).code == 2);
  CHECK(cli({"run", "--budget", "abc"}).code == 2);
  CHECK(cli({"run", "--budget", "30,10"}).code == 2);
  CHECK(cli({"run", "--budget", "0"}).code == 2);
  CHECK(cli({"run", "--algorithm", "cma-es"}).code == 2);
  CHECK(cli({"run", "--suite", "bbob-biobj"}).code == 2);
  CHECK(cli({"run", "--functions", "5"}).code == 2);
  CHECK(cli({"timing", "--dims", "4"}).code == 2);
  CHECK(cli({"postprocess"}).code == 2);
  const auto r = cli({"run", "--bogus"});
  CHECK(r.err.find("usage error") != std::string::npos);
}

TEST_CASE("help exits with 0") {
  const auto r = cli({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("validate-log") != std::string::npos);
  const auto sub = cli({"run", "--help"});
  CHECK(sub.code == 0);
  CHECK(sub.out.find("--algorithm-cmd") != std::string::npos);
}

TEST_CASE("run, validate and post-process a small slice") {
  const auto dir = scratch("run");
  const auto r = cli({"run", "--dims", "2,3", "--functions", "1,8", "--instances", "1,2",
                      "--budget", "20", "--threads", "2", "--out", dir.string(), "--notes",
                      "untuned defaults"});
  REQUIRE(r.code == 0);
  const auto log_path = dir / "experiment.log";
  CHECK(r.out.find("8 problems") != std::string::npos);
  CHECK(fs::exists(dir / "run_info.json"));

  const auto log = read_log(log_path);
  CHECK(log.blocks.size() == 8);
  CHECK(log.meta.notes == "untuned defaults");
  CHECK(log.meta.budget_multiplier == 20);
  CHECK(log.meta.command ==
        "blackbench run --suite mini-bbob --algorithm random-search --budget 20 --seed 1 "
        "--algorithm-seed 1 --dims 2,3 --functions 1,8 --instances 1,2");

  const auto v = cli({"validate-log", log_path.string()});
  CHECK(v.code == 0);
  CHECK(v.out.find("valid, 8 problems, 0 flagged") != std::string::npos);

  const auto report = dir / "report";
  const auto p = cli({"postprocess", log_path.string(), "--out", report.string()});
  CHECK(p.code == 0);
  CHECK(fs::exists(report / "ecdf_dim2.csv"));
  CHECK(fs::exists(report / "ecdf_dim3.csv"));
  CHECK(fs::exists(report / "ert.csv"));
  CHECK(fs::exists(report / "summary.txt"));
  fs::remove_all(dir);
}

TEST_CASE("budget schedule writes one log per multiplier and post-processing warns") {
  const auto dir = scratch("schedule");
  REQUIRE(cli({"run", "--dims", "2", "--functions", "1", "--budget", "3,10", "--out",
               dir.string()})
              .code == 0);
  CHECK(fs::exists(dir / "experiment_k3.log"));
  CHECK(fs::exists(dir / "experiment_k10.log"));
  CHECK_FALSE(fs::exists(dir / "experiment.log"));

  REQUIRE(cli({"run", "--dims", "2", "--functions", "1", "--budget", "30", "--algorithm",
               "local-search-1p1", "--out", (dir / "ls").string()})
              .code == 0);
  const auto p = cli({"postprocess", (dir / "experiment_k3.log").string(),
                      (dir / "ls" / "experiment.log").string(), "--out", (dir / "r").string()});
  CHECK(p.code == 0);
  CHECK(p.out.find("WARNING: budgets differ") != std::string::npos);
  CHECK(slurp(dir / "r" / "summary.txt").find("WARNING") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("output directory falls back to BLACKBENCH_OUT") {
  const auto dir = scratch("env");
  ::setenv("BLACKBENCH_OUT", dir.c_str(), 1);
  const auto r = cli({"run", "--dims", "2", "--functions", "3", "--budget", "5"});
  ::unsetenv("BLACKBENCH_OUT");
  CHECK(r.code == 0);
  CHECK(fs::exists(dir / "experiment.log"));
  fs::remove_all(dir);
}

TEST_CASE("validate-log rejects damaged logs with exit code 1") {
  const auto dir = scratch("damaged");
  REQUIRE(cli({"run", "--dims", "2", "--functions", "1", "--instances", "1", "--budget", "10",
               "--out", dir.string()})
              .code == 0);
  const auto path = dir / "experiment.log";
  std::string text = slurp(path);
  text.pop_back();  // drop the final newline: a truncated write
  std::ofstream(path, std::ios::binary | std::ios::trunc) << text;
  const auto r = cli({"validate-log", path.string()});
  CHECK(r.code == 1);
  CHECK(r.err.find("line") != std::string::npos);
  CHECK(cli({"validate-log", (dir / "missing.log").string()}).code == 1);
  fs::remove_all(dir);
}

TEST_CASE("suite definition files") {
  const auto dir = scratch("suitefile");
  fs::create_directories(dir);
  const auto def = dir / "small.suite";
  std::ofstream(def) << "# two dimensions only\nname = small\ndimensions = 2, 5\n"
                        "functions = 1-24\ninstances = 3\n";
  const auto r = cli({"run", "--suite-file", def.string(), "--budget", "5", "--out",
                      (dir / "out").string()});
  REQUIRE(r.code == 0);
  const auto log = read_log(dir / "out" / "experiment.log");
  CHECK(log.meta.suite == "small");
  CHECK(log.blocks.size() == 2 * 4 * 3);
  CHECK(log.blocks.back().suite_index == 1 * 24 * 3 + 7 * 3 + 2);

  std::ofstream(def, std::ios::trunc) << "name = bad\ndimensions = 5, 2\n";
  CHECK(cli({"run", "--suite-file", def.string(), "--out", (dir / "o2").string()}).code == 1);
  fs::remove_all(dir);
}

TEST_CASE("external algorithm through the command line") {
  const auto dir = scratch("external");
  const auto r = cli({"run", "--algorithm-cmd", std::string(BLACKBENCH_PEER) + " random 3",
                      "--dims", "2", "--functions", "1,2", "--budget", "10", "--out",
                      dir.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("flagged") == std::string::npos);
  CHECK(cli({"validate-log", (dir / "experiment.log").string()}).code == 0);

  const auto crash = cli({"run", "--algorithm-cmd", std::string(BLACKBENCH_PEER) + " crash",
                          "--dims", "2", "--functions", "1", "--budget", "10", "--out",
                          (dir / "crash").string()});
  CHECK(crash.code == 0);
  CHECK(crash.out.find("15 flagged") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("timing subcommand") {
  const auto dir = scratch("timing");
  const auto r = cli({"timing", "--dims", "3,2", "--min-seconds", "0.01", "--budget", "5",
                      "--baseline", "--threads", "4", "--out", dir.string()});
  REQUIRE(r.code == 0);
  CHECK(r.err.find("--threads ignored") != std::string::npos);
  CHECK(r.out.find("hostname: ") != std::string::npos);
  const auto reports = read_timing_reports(dir / "timing.log");
  REQUIRE(reports.size() == 2);
  CHECK_FALSE(reports[0].baseline);
  CHECK(reports[1].baseline);
  for (const auto& rep : reports) {
    REQUIRE(rep.entries.size() == 2);
    CHECK(rep.entries[0].dimension == 2);
    CHECK(rep.entries[1].dimension == 3);
    CHECK_FALSE(rep.environment.empty());
  }
  fs::remove_all(dir);
}

// Test peer for the wire protocol. Modes:
//   random <seed>     uniform random search, same sampling rule as the built-in
//   count <n>         evaluate the initial solution n times, then send done
//   forever           keep asking the initial solution until told to stop
//   garbage           answer problem_start with a non-record line
//   crash             exit(3) right after problem_start
//   fail              send done with an error field
//   wrong-dim         ask with one coordinate too many
// Every mode appends the number of tell messages it received to the file
// named by $PEER_TELL_LOG, if set.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "blackbench/rng.hpp"

namespace {

using nlohmann::json;

void send(const json& j) { std::cout << j.dump() << '\n' << std::flush; }

int tells = 0;

void record_tells() {
  if (const char* path = std::getenv("PEER_TELL_LOG")) std::ofstream(path, std::ios::app) << tells << '\n';
}

/// Sends an ask and returns the reply; false when the runner ended the problem.
bool ask(const std::vector<double>& x, json& reply) {
  send({{"kind", "ask"}, {"x", x}});
  std::string line;
  if (!std::getline(std::cin, line)) return false;
  reply = json::parse(line);
  if (reply["kind"] == "tell") {
    ++tells;
    return true;
  }
  return false;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) return 64;
  const std::string mode = argv[1];
  std::string line;
  if (!std::getline(std::cin, line)) return 65;
  const json start = json::parse(line);
  const auto lower = start["lower_bounds"].get<std::vector<double>>();
  const auto upper = start["upper_bounds"].get<std::vector<double>>();
  const auto x0 = start["initial_solution"].get<std::vector<double>>();
  json reply;

  if (mode == "random") {
    blackbench::Rng64 rng(blackbench::derive_seed(std::stoull(argv[2]), 0));
    for (;;) {
      std::vector<double> x(lower.size());
      for (std::size_t i = 0; i < x.size(); ++i) x[i] = rng.uniform(lower[i], upper[i]);
      if (!ask(x, reply)) break;
      if (reply["final_target_hit"].get<bool>()) {
        send({{"kind", "done"}});
        std::getline(std::cin, line);
        break;
      }
    }
  } else if (mode == "count") {
    const int n = std::atoi(argv[2]);
    bool open = true;
    for (int i = 0; i < n && open; ++i) open = ask(x0, reply);
    if (open) {
      send({{"kind", "done"}});
      std::getline(std::cin, line);
    }
  } else if (mode == "forever") {
    while (ask(x0, reply)) {
    }
  } else if (mode == "garbage") {
    std::cout << "this is not a record\n" << std::flush;
    std::getline(std::cin, line);
  } else if (mode == "crash") {
    record_tells();
    return 3;
  } else if (mode == "fail") {
    ask(x0, reply);
    send({{"kind", "done"}, {"error", "callback raised"}});
    std::getline(std::cin, line);
  } else if (mode == "wrong-dim") {
    std::vector<double> x = x0;
    x.push_back(0.0);
    ask(x, reply);
  } else {
    return 64;
  }
  record_tells();
  return 0;
}

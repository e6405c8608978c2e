#pragma once

// Wire protocol for optimizers running as subprocesses. One line-record per
// message over the child's stdin/stdout, strict alternation: the runner
// sends problem_start, then answers every ask/done with exactly one reply.
// See docs/protocol.md.

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "blackbench/observer.hpp"
#include "blackbench/problem.hpp"

namespace blackbench {

enum class MessageKind { kProblemStart, kAsk, kTell, kFinalTarget, kDone, kProblemEnd, kError };

std::string_view to_string(MessageKind kind) noexcept;

struct ProtocolMessage {
  MessageKind kind = MessageKind::kError;
  AlgorithmView view;           // problem_start
  std::vector<double> x;        // ask
  double f = 0.0;               // tell
  std::uint64_t evaluations = 0;  // tell, final_target, problem_end
  bool final_target_hit = false;  // tell
  std::string reason;           // problem_end: "budget" | "done"
  std::string message;          // error; done (optional algorithm-side failure)
};

std::string encode_message(const ProtocolMessage& message);

/// Throws ParseError (line 1) on anything that is not a well-formed message.
ProtocolMessage decode_message(std::string_view line);

/// Bidirectional line transport to an algorithm.
class LineChannel {
 public:
  virtual ~LineChannel() = default;
  /// Throws IoError if the peer is gone.
  virtual void send(const std::string& line) = 0;
  /// nullopt on end of stream. Throws IoError on timeout.
  virtual std::optional<std::string> receive() = 0;
};

/// `sh -c command` with piped stdin/stdout; stderr is inherited.
class Subprocess final : public LineChannel {
 public:
  Subprocess(const std::string& command, std::chrono::milliseconds timeout);
  ~Subprocess() override;

  Subprocess(const Subprocess&) = delete;
  Subprocess& operator=(const Subprocess&) = delete;

  void send(const std::string& line) override;
  std::optional<std::string> receive() override;

  /// Closes the child's stdin and reaps it, killing it after a grace period.
  /// Returns the exit status as reported by waitpid.
  int close();

  bool killed_by_runner() const noexcept { return killed_; }

 private:
  int pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
  std::chrono::milliseconds timeout_;
  std::string pending_;
  bool eof_ = false;
  std::optional<int> status_;
  bool killed_ = false;
};

/// Drives one problem against a protocol peer until it ends, the budget is
/// exhausted or the final target is hit. Protocol violations and a vanishing
/// peer abort the run; the summary status says why and all data gathered so
/// far stays in the problem.
ProblemSummary serve_problem(Problem& problem, LineChannel& channel, std::uint64_t budget);

struct ExternalAlgorithm {
  std::string name;
  std::string command;
  std::chrono::milliseconds timeout{60000};
};

/// One subprocess per call.
ProblemSummary serve_problem(Problem& problem, const ExternalAlgorithm& algorithm,
                             std::uint64_t budget);

}  // namespace blackbench

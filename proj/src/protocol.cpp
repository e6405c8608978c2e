#include "blackbench/protocol.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <thread>

#include "blackbench/errors.hpp"
#include "blackbench/record.hpp"

extern char** environ;

namespace blackbench {

std::string_view to_string(MessageKind kind) noexcept {
  switch (kind) {
    case MessageKind::kProblemStart:
      return "problem_start";
    case MessageKind::kAsk:
      return "ask";
    case MessageKind::kTell:
      return "tell";
    case MessageKind::kFinalTarget:
      return "final_target";
    case MessageKind::kDone:
      return "done";
    case MessageKind::kProblemEnd:
      return "problem_end";
    case MessageKind::kError:
      return "error";
  }
  return "error";
}

std::string encode_message(const ProtocolMessage& m) {
  switch (m.kind) {
    case MessageKind::kProblemStart:
      return serialize_view(m.view, "problem_start");
    case MessageKind::kAsk:
      return RecordWriter("ask").field("x", std::span<const double>(m.x)).str();
    case MessageKind::kTell:
      return RecordWriter("tell")
          .field("f", m.f)
          .field("evaluations", m.evaluations)
          .field("final_target_hit", m.final_target_hit)
          .str();
    case MessageKind::kFinalTarget:
      return RecordWriter("final_target").field("evaluations", m.evaluations).str();
    case MessageKind::kDone: {
      RecordWriter w("done");
      if (!m.message.empty()) w.field("error", m.message);
      return w.str();
    }
    case MessageKind::kProblemEnd:
      return RecordWriter("problem_end")
          .field("reason", m.reason)
          .field("evaluations", m.evaluations)
          .str();
    case MessageKind::kError:
      return RecordWriter("error").field("message", m.message).str();
  }
  return {};
}

ProtocolMessage decode_message(std::string_view line) {
  constexpr std::size_t ln = 1;
  const Record r = parse_record(line, ln);
  const std::string kind = record_kind(r, ln);
  ProtocolMessage m;
  if (kind == "problem_start") {
    m.kind = MessageKind::kProblemStart;
    m.view.dimension = read_uint(r, "dimension", ln);
    m.view.num_objectives = read_uint(r, "num_objectives", ln);
    m.view.num_constraints = read_uint(r, "num_constraints", ln);
    m.view.lower_bounds = read_reals(r, "lower_bounds", ln);
    m.view.upper_bounds = read_reals(r, "upper_bounds", ln);
    m.view.initial_solution = read_reals(r, "initial_solution", ln);
    if (r.contains("budget_hint")) m.view.budget_hint = read_uint(r, "budget_hint", ln);
  } else if (kind == "ask") {
    m.kind = MessageKind::kAsk;
    m.x = read_reals(r, "x", ln);
  } else if (kind == "tell") {
    m.kind = MessageKind::kTell;
    m.f = read_real(r, "f", ln);
    m.evaluations = read_uint(r, "evaluations", ln);
    m.final_target_hit = read_bool(r, "final_target_hit", ln);
  } else if (kind == "final_target") {
    m.kind = MessageKind::kFinalTarget;
    m.evaluations = read_uint(r, "evaluations", ln);
  } else if (kind == "done") {
    m.kind = MessageKind::kDone;
    if (r.contains("error")) m.message = read_string(r, "error", ln);
  } else if (kind == "problem_end") {
    m.kind = MessageKind::kProblemEnd;
    m.reason = read_string(r, "reason", ln);
    m.evaluations = read_uint(r, "evaluations", ln);
  } else if (kind == "error") {
    m.kind = MessageKind::kError;
    m.message = read_string(r, "message", ln);
  } else {
    throw ParseError(ln, "unknown message kind '" + kind + "'");
  }
  return m;
}

// ---------------------------------------------------------------------------
// Subprocess

namespace {

void ignore_sigpipe() {
  static const bool done = [] {
    ::signal(SIGPIPE, SIG_IGN);
    return true;
  }();
  (void)done;
}

std::string errno_text() { return std::strerror(errno); }

}  // namespace

Subprocess::Subprocess(const std::string& command, std::chrono::milliseconds timeout)
    : timeout_(timeout) {
  ignore_sigpipe();
  int in_pipe[2];
  int out_pipe[2];
  if (::pipe2(in_pipe, O_CLOEXEC) != 0) throw IoError("pipe: " + errno_text());
  if (::pipe2(out_pipe, O_CLOEXEC) != 0) {
    ::close(in_pipe[0]);
    ::close(in_pipe[1]);
    throw IoError("pipe: " + errno_text());
  }

  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  posix_spawn_file_actions_adddup2(&actions, in_pipe[0], STDIN_FILENO);
  posix_spawn_file_actions_adddup2(&actions, out_pipe[1], STDOUT_FILENO);

  std::string shell = "/bin/sh";
  std::string flag = "-c";
  std::string cmd = command;
  char* argv[] = {shell.data(), flag.data(), cmd.data(), nullptr};
  // Own process group, so a kill also reaches whatever the shell started.
  posix_spawnattr_t attr;
  posix_spawnattr_init(&attr);
  posix_spawnattr_setflags(&attr, POSIX_SPAWN_SETPGROUP);
  posix_spawnattr_setpgroup(&attr, 0);
  const int rc = ::posix_spawn(&pid_, "/bin/sh", &actions, &attr, argv, environ);
  posix_spawnattr_destroy(&attr);
  posix_spawn_file_actions_destroy(&actions);
  ::close(in_pipe[0]);
  ::close(out_pipe[1]);
  if (rc != 0) {
    ::close(in_pipe[1]);
    ::close(out_pipe[0]);
    throw IoError("cannot spawn '" + command + "': " + std::strerror(rc));
  }
  to_child_ = in_pipe[1];
  from_child_ = out_pipe[0];
}

Subprocess::~Subprocess() {
  try {
    close();
  } catch (...) {
  }
}

void Subprocess::send(const std::string& line) {
  if (to_child_ < 0) throw IoError("algorithm stdin is closed");
  std::string data = line + '\n';
  std::size_t off = 0;
  while (off < data.size()) {
    const ssize_t n = ::write(to_child_, data.data() + off, data.size() - off);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw IoError("write to algorithm failed: " + errno_text());
    }
    off += static_cast<std::size_t>(n);
  }
}

std::optional<std::string> Subprocess::receive() {
  const auto deadline = std::chrono::steady_clock::now() + timeout_;
  for (;;) {
    if (const auto nl = pending_.find('\n'); nl != std::string::npos) {
      std::string line = pending_.substr(0, nl);
      pending_.erase(0, nl + 1);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      return line;
    }
    if (eof_) return std::nullopt;
    const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
        deadline - std::chrono::steady_clock::now());
    if (left.count() <= 0) throw IoError("algorithm did not answer within the timeout");
    pollfd p{from_child_, POLLIN, 0};
    const int ready = ::poll(&p, 1, static_cast<int>(left.count()));
    if (ready < 0) {
      if (errno == EINTR) continue;
      throw IoError("poll failed: " + errno_text());
    }
    if (ready == 0) continue;
    char buf[4096];
    const ssize_t n = ::read(from_child_, buf, sizeof buf);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw IoError("read from algorithm failed: " + errno_text());
    }
    if (n == 0) {
      eof_ = true;  // a partial last line without newline is dropped
      continue;
    }
    pending_.append(buf, static_cast<std::size_t>(n));
  }
}

int Subprocess::close() {
  if (status_) return *status_;
  if (to_child_ >= 0) {
    ::close(to_child_);
    to_child_ = -1;
  }
  int status = 0;
  if (pid_ > 0) {
    using namespace std::chrono_literals;
    const auto deadline = std::chrono::steady_clock::now() + 2s;
    for (;;) {
      const pid_t r = ::waitpid(pid_, &status, WNOHANG);
      if (r == pid_ || (r < 0 && errno != EINTR)) break;
      if (std::chrono::steady_clock::now() > deadline) {
        ::kill(-pid_, SIGKILL);
        killed_ = true;
        ::waitpid(pid_, &status, 0);
        break;
      }
      std::this_thread::sleep_for(2ms);
    }
  }
  if (from_child_ >= 0) {
    ::close(from_child_);
    from_child_ = -1;
  }
  status_ = status;
  return status;
}

// ---------------------------------------------------------------------------
// Serving

namespace {

ProtocolMessage make(MessageKind kind) {
  ProtocolMessage m;
  m.kind = kind;
  return m;
}

}  // namespace

ProblemSummary serve_problem(Problem& problem, LineChannel& channel, std::uint64_t budget) {
  ProblemSummary summary;
  summary.budget = budget;
  summary.restarts = 1;

  auto reply_end = [&](std::string reason) {
    ProtocolMessage end = make(MessageKind::kProblemEnd);
    end.reason = std::move(reason);
    end.evaluations = problem.evaluations();
    channel.send(encode_message(end));
  };
  auto reply_error = [&](const std::string& text) {
    ProtocolMessage err = make(MessageKind::kError);
    err.message = text;
    try {
      channel.send(encode_message(err));
    } catch (const IoError&) {
    }
  };

  try {
    ProtocolMessage start = make(MessageKind::kProblemStart);
    start.view = problem.algorithm_view(budget);
    channel.send(encode_message(start));

    for (;;) {
      const auto line = channel.receive();
      if (!line) {
        summary.status = "aborted: algorithm exited without 'done'";
        break;
      }
      ProtocolMessage msg;
      try {
        msg = decode_message(*line);
      } catch (const ParseError& e) {
        reply_error(std::string("malformed message: ") + e.what());
        summary.status = "aborted: malformed message";
        break;
      }

      if (msg.kind == MessageKind::kAsk) {
        if (problem.final_target_hit()) {
          ProtocolMessage ft = make(MessageKind::kFinalTarget);
          ft.evaluations = problem.evaluations();
          channel.send(encode_message(ft));
          break;
        }
        if (problem.evaluations() >= budget) {
          reply_end("budget");
          break;
        }
        ProtocolMessage tell = make(MessageKind::kTell);
        try {
          tell.f = problem.evaluate(msg.x);
        } catch (const ContractViolation& e) {
          reply_error(std::string("invalid ask: ") + e.what());
          summary.status = "aborted: invalid ask";
          break;
        }
        tell.evaluations = problem.evaluations();
        tell.final_target_hit = problem.final_target_hit();
        channel.send(encode_message(tell));
      } else if (msg.kind == MessageKind::kDone) {
        reply_end("done");
        if (!msg.message.empty()) summary.status = "aborted: algorithm error: " + msg.message;
        break;
      } else if (msg.kind == MessageKind::kError) {
        reply_end("done");
        summary.status = "aborted: algorithm error: " + msg.message;
        break;
      } else {
        reply_error("unexpected message kind '" + std::string(to_string(msg.kind)) + "'");
        summary.status = "aborted: unexpected message";
        break;
      }
    }
  } catch (const IoError& e) {
    summary.status = std::string("aborted: ") + e.what();
  }

  summary.evaluations = problem.evaluations();
  summary.constraint_evaluations = problem.constraint_evaluations();
  summary.best_f = problem.best_f();
  summary.final_target_hit = problem.final_target_hit();
  return summary;
}

ProblemSummary serve_problem(Problem& problem, const ExternalAlgorithm& algorithm,
                             std::uint64_t budget) {
  std::optional<Subprocess> child;
  try {
    child.emplace(algorithm.command, algorithm.timeout);
  } catch (const IoError& e) {
    ProblemSummary s;
    s.budget = budget;
    s.best_f = problem.best_f();
    s.status = std::string("aborted: ") + e.what();
    return s;
  }
  ProblemSummary summary = serve_problem(problem, *child, budget);
  const int status = child->close();
  if (summary.status == "ok" && WIFSIGNALED(status) && !child->killed_by_runner())
    summary.status = "aborted: algorithm killed by signal " + std::to_string(WTERMSIG(status));
  return summary;
}

}  // namespace blackbench

// Copyright 2026 The gnas Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/socket.h>
#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstring>
#include <deque>
#include <map>

#include <json.hpp>

#include "gnas/evaluation.h"

namespace gnas {

using Clock = std::chrono::steady_clock;
using json = nlohmann::json;

// A child process whose stdin and stdout are one end of a socket pair.
// Sockets rather than pipes so writes can pass MSG_NOSIGNAL instead of
// touching the process-wide SIGPIPE disposition.
class EvaluatorProcess {
 public:
  enum class ReadStatus { kLine, kTimeout, kClosed };

  static std::unique_ptr<EvaluatorProcess> Spawn(
      const std::vector<std::string>& command, std::string* error) {
    if (command.empty()) {
      *error = "external evaluator command is empty";
      return nullptr;
    }
    int fds[2];
    if (socketpair(AF_UNIX, SOCK_STREAM | SOCK_CLOEXEC, 0, fds) != 0) {
      *error = std::string("socketpair: ") + std::strerror(errno);
      return nullptr;
    }
    std::vector<char*> argv;
    for (const auto& arg : command) argv.push_back(const_cast<char*>(arg.c_str()));
    argv.push_back(nullptr);

    const pid_t pid = fork();
    if (pid < 0) {
      *error = std::string("fork: ") + std::strerror(errno);
      close(fds[0]);
      close(fds[1]);
      return nullptr;
    }
    if (pid == 0) {
      dup2(fds[1], STDIN_FILENO);
      dup2(fds[1], STDOUT_FILENO);
      execvp(argv[0], argv.data());
      _exit(127);
    }
    close(fds[1]);
    return std::unique_ptr<EvaluatorProcess>(new EvaluatorProcess(pid, fds[0]));
  }

  ~EvaluatorProcess() {
    if (fd_ >= 0) close(fd_);
    Reap(std::chrono::milliseconds(500));
  }

  bool WriteLine(const std::string& line) {
    std::string data = line + "\n";
    size_t offset = 0;
    while (offset < data.size()) {
      const ssize_t n = send(fd_, data.data() + offset, data.size() - offset,
                             MSG_NOSIGNAL);
      if (n < 0) {
        if (errno == EINTR) continue;
        return false;
      }
      offset += static_cast<size_t>(n);
    }
    return true;
  }

  // Waits until `deadline` for a complete line.
  ReadStatus ReadLine(Clock::time_point deadline, std::string* line) {
    while (true) {
      const size_t newline = buffer_.find('\n');
      if (newline != std::string::npos) {
        *line = buffer_.substr(0, newline);
        buffer_.erase(0, newline + 1);
        if (!line->empty() && line->back() == '\r') line->pop_back();
        return ReadStatus::kLine;
      }
      if (closed_) return ReadStatus::kClosed;
      const auto now = Clock::now();
      if (now >= deadline) return ReadStatus::kTimeout;
      const auto wait = std::chrono::ceil<std::chrono::milliseconds>(deadline - now);
      pollfd pfd{fd_, POLLIN, 0};
      const int ready = poll(&pfd, 1, static_cast<int>(std::min<int64_t>(
                                          wait.count(), 1 << 30)));
      if (ready < 0 && errno != EINTR) {
        closed_ = true;
        continue;
      }
      if (ready <= 0) continue;
      char chunk[4096];
      const ssize_t n = recv(fd_, chunk, sizeof(chunk), 0);
      if (n > 0) {
        buffer_.append(chunk, static_cast<size_t>(n));
      } else if (n == 0 || errno != EINTR) {
        closed_ = true;
      }
    }
  }

  void Shutdown() { shutdown(fd_, SHUT_WR); }

 private:
  EvaluatorProcess(pid_t pid, int fd) : pid_(pid), fd_(fd) {}

  void Reap(std::chrono::milliseconds grace) {
    if (pid_ <= 0) return;
    const auto deadline = Clock::now() + grace;
    while (Clock::now() < deadline) {
      if (waitpid(pid_, nullptr, WNOHANG) != 0) return;
      usleep(5000);
    }
    kill(pid_, SIGKILL);
    waitpid(pid_, nullptr, 0);
  }

  pid_t pid_;
  int fd_;
  bool closed_ = false;
  std::string buffer_;
};

ExternalBackend::ExternalBackend(const SearchSpace& space,
                                 std::vector<std::string> command,
                                 double timeout_seconds, int max_in_flight)
    : space_(space),
      command_(std::move(command)),
      timeout_(timeout_seconds),
      max_in_flight_(std::max(max_in_flight, 1)) {
  if (!(timeout_seconds > 0)) {
    throw std::invalid_argument("external evaluator timeout must be positive");
  }
}

ExternalBackend::~ExternalBackend() { Stop(); }

void ExternalBackend::Stop() {
  if (!process_) return;
  process_->WriteLine(R"({"type":"shutdown"})");
  process_->Shutdown();
  process_.reset();
}

bool ExternalBackend::EnsureStarted(std::string* error) {
  if (process_) return true;
  process_ = EvaluatorProcess::Spawn(command_, error);
  if (!process_) return false;
  ++launches_;

  json init = {{"type", "init"}, {"layers", space_.layers()}};
  json components = json::array();
  for (const auto& c : space_.components()) {
    components.push_back({{"name", c.name()}, {"values", c.values()}});
  }
  init["components"] = std::move(components);
  std::string line;
  if (!process_->WriteLine(init.dump())) {
    *error = "evaluator process closed its input during init";
  } else {
    switch (process_->ReadLine(Clock::now() + std::chrono::duration_cast<
                                                  Clock::duration>(timeout_),
                               &line)) {
      case EvaluatorProcess::ReadStatus::kLine: {
        const json reply = json::parse(line, nullptr, false);
        if (!reply.is_discarded() && reply.is_object() &&
            reply.value("type", "") == "ready") {
          return true;
        }
        *error = "evaluator sent '" + line + "' instead of ready";
        break;
      }
      case EvaluatorProcess::ReadStatus::kTimeout:
        *error = "evaluator did not become ready";
        break;
      case EvaluatorProcess::ReadStatus::kClosed:
        *error = "evaluator process exited during init";
        break;
    }
  }
  process_.reset();
  return false;
}

std::vector<BackendOutcome> ExternalBackend::Evaluate(
    std::span<const Architecture> archs) {
  std::vector<BackendOutcome> out(archs.size(),
                                  BackendOutcome::Fail("not evaluated"));
  struct InFlight {
    size_t index;
    Clock::time_point deadline;
  };
  std::deque<size_t> queue;
  for (size_t i = 0; i < archs.size(); ++i) queue.push_back(i);
  std::map<int64_t, InFlight> in_flight;
  const auto timeout = std::chrono::duration_cast<Clock::duration>(timeout_);
  constexpr int kMaxRestartsPerBatch = 3;
  int restarts = 0;

  auto fail_in_flight = [&](const std::string& message) {
    for (const auto& [id, f] : in_flight) {
      out[f.index] = BackendOutcome::Fail(message);
    }
    in_flight.clear();
    process_.reset();
  };

  while (!queue.empty() || !in_flight.empty()) {
    if (!queue.empty() && !process_) {
      std::string error;
      if (restarts > kMaxRestartsPerBatch || !EnsureStarted(&error)) {
        if (error.empty()) error = "evaluator restarted too many times";
        for (size_t i : queue) out[i] = BackendOutcome::Fail(error);
        queue.clear();
        fail_in_flight(error);
        break;
      }
      ++restarts;
    }

    while (process_ && !queue.empty() &&
           static_cast<int>(in_flight.size()) < max_in_flight_) {
      const size_t index = queue.front();
      queue.pop_front();
      const int64_t id = next_id_++;
      const json request = {{"type", "evaluate"},
                            {"id", id},
                            {"architecture",
                             EncodeArchitecture(space_, archs[index])}};
      in_flight[id] = {index, Clock::now() + timeout};
      if (!process_->WriteLine(request.dump())) {
        fail_in_flight("evaluator process closed its input");
        break;
      }
    }
    if (in_flight.empty()) continue;

    auto next_deadline = Clock::time_point::max();
    for (const auto& [id, f] : in_flight) {
      next_deadline = std::min(next_deadline, f.deadline);
    }
    std::string line;
    const auto status = process_->ReadLine(next_deadline, &line);
    if (status == EvaluatorProcess::ReadStatus::kClosed) {
      fail_in_flight("evaluator process exited");
      continue;
    }
    if (status == EvaluatorProcess::ReadStatus::kTimeout) {
      const auto now = Clock::now();
      for (auto it = in_flight.begin(); it != in_flight.end();) {
        if (it->second.deadline <= now) {
          out[it->second.index] = BackendOutcome::Fail(
              "timeout after " + std::to_string(timeout_.count()) +
              " s waiting for id " + std::to_string(it->first));
          it = in_flight.erase(it);
        } else {
          ++it;
        }
      }
      continue;
    }

    const json reply = json::parse(line, nullptr, false);
    if (reply.is_discarded() || !reply.is_object() ||
        !reply.contains("id") || !reply["id"].is_number_integer()) {
      fail_in_flight("evaluator sent malformed line: '" + line + "'");
      continue;
    }
    const auto it = in_flight.find(reply["id"].get<int64_t>());
    if (it == in_flight.end()) continue;  // answer to a timed-out request
    const size_t index = it->second.index;
    in_flight.erase(it);
    const std::string type = reply.value("type", "");
    if (type == "result" && reply.contains("fitness") &&
        reply["fitness"].is_number()) {
      out[index] = BackendOutcome::Ok(reply["fitness"].get<double>());
    } else if (type == "error") {
      out[index] = BackendOutcome::Fail(
          "evaluator error: " +
          (reply.contains("message") && reply["message"].is_string()
               ? reply["message"].get<std::string>()
               : std::string("(no message)")));
    } else {
      out[index] = BackendOutcome::Fail("evaluator sent unexpected reply '" +
                                        line + "'");
    }
  }
  return out;
}

}  // namespace gnas

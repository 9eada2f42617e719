#include "prover/external.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <spawn.h>
#include <sys/resource.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <array>
#include <cerrno>
#include <chrono>
#include <cstring>

extern char** environ;

namespace gatp::prover {

namespace {

class Pipe {
public:
  Pipe() {
    if (::pipe2(fds_, O_CLOEXEC) != 0)
      throw SpawnFailure(std::string("pipe: ") + std::strerror(errno));
  }
  ~Pipe() {
    close_read();
    close_write();
  }
  Pipe(const Pipe&) = delete;
  Pipe& operator=(const Pipe&) = delete;

  int read_end() const { return fds_[0]; }
  int write_end() const { return fds_[1]; }
  void close_read() {
    if (fds_[0] >= 0) ::close(fds_[0]);
    fds_[0] = -1;
  }
  void close_write() {
    if (fds_[1] >= 0) ::close(fds_[1]);
    fds_[1] = -1;
  }

private:
  int fds_[2] = {-1, -1};
};

double seconds(const timeval& tv) {
  return static_cast<double>(tv.tv_sec) + static_cast<double>(tv.tv_usec) * 1e-6;
}

// Reads whatever is available; returns false at end of stream.
bool drain(int fd, std::string& sink) {
  std::array<char, 8192> buf{};
  while (true) {
    ssize_t n = ::read(fd, buf.data(), buf.size());
    if (n > 0) {
      std::size_t room = kMaxCapturedOutput - std::min(sink.size(), kMaxCapturedOutput);
      sink.append(buf.data(), std::min(room, static_cast<std::size_t>(n)));
      continue;
    }
    if (n == 0) return false;
    if (errno == EINTR) continue;
    return true; // EAGAIN
  }
}

} // namespace

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'')
      out += "'\\''";
    else
      out += c;
  }
  return out + "'";
}

std::string expand_command(const std::string& command_template,
                           const std::filesystem::path& input) {
  static constexpr std::string_view kPlaceholder = "{input}";
  if (command_template.find(kPlaceholder) == std::string::npos)
    throw std::invalid_argument("command template lacks {input}");
  const std::string quoted = shell_quote(input.string());
  std::string out;
  std::size_t pos = 0;
  while (true) {
    auto hit = command_template.find(kPlaceholder, pos);
    out.append(command_template, pos, hit == std::string::npos ? std::string::npos : hit - pos);
    if (hit == std::string::npos) break;
    out += quoted;
    pos = hit + kPlaceholder.size();
  }
  return out;
}

ProofOutcome external_prove(const ProverDescriptor& desc,
                            const std::filesystem::path& problem_file,
                            const Deadline& deadline) {
  const std::string command = expand_command(desc.command, problem_file);
  const auto started = std::chrono::steady_clock::now();

  Pipe out_pipe;
  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  posix_spawn_file_actions_adddup2(&actions, out_pipe.write_end(), STDOUT_FILENO);
  posix_spawn_file_actions_addopen(&actions, STDERR_FILENO, "/dev/null", O_WRONLY, 0);
  posix_spawn_file_actions_addopen(&actions, STDIN_FILENO, "/dev/null", O_RDONLY, 0);
  posix_spawnattr_t attr;
  posix_spawnattr_init(&attr);
  posix_spawnattr_setflags(&attr, POSIX_SPAWN_SETPGROUP);
  posix_spawnattr_setpgroup(&attr, 0);

  std::string sh = "/bin/sh";
  std::string dash_c = "-c";
  std::string cmd = command;
  char* argv[] = {sh.data(), dash_c.data(), cmd.data(), nullptr};
  pid_t pid = -1;
  int rc = posix_spawn(&pid, "/bin/sh", &actions, &attr, argv, environ);
  posix_spawn_file_actions_destroy(&actions);
  posix_spawnattr_destroy(&attr);
  if (rc != 0) throw SpawnFailure("cannot spawn '" + command + "': " + std::strerror(rc));
  out_pipe.close_write();
  ::fcntl(out_pipe.read_end(), F_SETFL, O_NONBLOCK);

  std::string captured;
  bool pipe_open = true;
  bool timed_out = false;
  int wstatus = 0;
  rusage usage{};
  while (true) {
    pid_t done = ::wait4(pid, &wstatus, WNOHANG, &usage);
    if (done == pid) break;
    if (deadline.expired()) {
      ::kill(-pid, SIGKILL);
      while (::wait4(pid, &wstatus, 0, &usage) < 0 && errno == EINTR) {
      }
      timed_out = true;
      break;
    }
    int wait_ms = 10;
    if (auto left = deadline.remaining_seconds())
      wait_ms = std::clamp(static_cast<int>(*left * 1000.0) + 1, 1, 10);
    if (pipe_open) {
      pollfd pfd{out_pipe.read_end(), POLLIN, 0};
      if (::poll(&pfd, 1, wait_ms) > 0) pipe_open = drain(out_pipe.read_end(), captured);
    } else {
      ::usleep(static_cast<useconds_t>(wait_ms) * 1000);
    }
  }
  // Stragglers in the group would otherwise keep the pipe open.
  ::kill(-pid, SIGKILL);
  if (pipe_open) drain(out_pipe.read_end(), captured);

  ProofOutcome outcome;
  outcome.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  outcome.cpu_seconds = seconds(usage.ru_utime) + seconds(usage.ru_stime);
  if (!captured.empty()) outcome.trace = std::move(captured);
  if (timed_out) {
    outcome.status = Status::Timeout;
  } else if (WIFEXITED(wstatus)) {
    int code = WEXITSTATUS(wstatus);
    outcome.status = code == 0 ? Status::Proved : code == 1 ? Status::Unproved : Status::Error;
    if (outcome.status == Status::Error) outcome.message = "exit code " + std::to_string(code);
  } else {
    outcome.status = Status::Error;
    outcome.message = "terminated by signal " + std::to_string(WTERMSIG(wstatus));
  }
  return outcome;
}

} // namespace gatp::prover

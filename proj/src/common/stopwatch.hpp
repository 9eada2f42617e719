#pragma once

#include <chrono>
#include <ctime>

namespace gatp {

/// Wall clock plus CPU time of the calling thread.
class Stopwatch {
public:
  Stopwatch() : wall_start_(std::chrono::steady_clock::now()), cpu_start_(thread_cpu()) {}

  double wall_seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start_)
        .count();
  }
  double cpu_seconds() const { return thread_cpu() - cpu_start_; }

  static double thread_cpu() {
    timespec ts{};
    clock_gettime(CLOCK_THREAD_CPUTIME_ID, &ts);
    return static_cast<double>(ts.tv_sec) + static_cast<double>(ts.tv_nsec) * 1e-9;
  }

private:
  std::chrono::steady_clock::time_point wall_start_;
  double cpu_start_;
};

} // namespace gatp

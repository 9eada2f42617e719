#pragma once

#include <chrono>
#include <optional>

#include "common/error.hpp"

namespace gatp {

/// Cooperative time budget. Inner loops call poll(), which throws
/// TimeoutError once the budget is spent.
class Deadline {
public:
  using Clock = std::chrono::steady_clock;

  /// Unlimited budget.
  Deadline() = default;

  static Deadline after(std::chrono::duration<double> budget) {
    Deadline d;
    d.until_ = Clock::now() +
               std::chrono::duration_cast<Clock::duration>(budget);
    return d;
  }

  static Deadline at(Clock::time_point when) {
    Deadline d;
    d.until_ = when;
    return d;
  }

  bool unlimited() const { return !until_.has_value(); }
  bool expired() const { return until_ && Clock::now() >= *until_; }

  std::optional<Clock::time_point> until() const { return until_; }

  /// Seconds left, or nullopt when unlimited. Never negative.
  std::optional<double> remaining_seconds() const {
    if (!until_) return std::nullopt;
    auto left = std::chrono::duration<double>(*until_ - Clock::now()).count();
    return left > 0 ? left : 0.0;
  }

  void poll() const {
    if (expired()) throw TimeoutError();
  }

private:
  std::optional<Clock::time_point> until_;
};

} // namespace gatp

#pragma once

#include <chrono>
#include <optional>

#include "tsbench/error.hpp"

namespace tsbench {

/// Cooperative wall-clock budget. Long-running loops call check() at safe
/// points; nothing is preempted.
class Deadline {
 public:
  using Clock = std::chrono::steady_clock;

  static Deadline none() { return Deadline(); }
  static Deadline after(double seconds) {
    Deadline d;
    d.at_ = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                               std::chrono::duration<double>(seconds));
    return d;
  }

  bool expired() const { return at_ && Clock::now() >= *at_; }
  void check() const {
    if (expired()) throw Error(ErrorCode::DeadlineExceeded);
  }

 private:
  std::optional<Clock::time_point> at_;
};

}  // namespace tsbench

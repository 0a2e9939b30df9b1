#pragma once

#include <atomic>
#include <cstdint>

namespace ci {

/// Unix seconds.
class Clock {
 public:
  virtual ~Clock() = default;
  virtual std::uint64_t now() const = 0;
};

class SystemClock final : public Clock {
 public:
  std::uint64_t now() const override;
};

/// Simulation clock advanced explicitly by the driver.
class ManualClock final : public Clock {
 public:
  explicit ManualClock(std::uint64_t start = 0) : now_(start) {}
  std::uint64_t now() const override { return now_.load(); }
  void set(std::uint64_t t) { now_.store(t); }
  void advance(std::uint64_t seconds) { now_.fetch_add(seconds); }

 private:
  std::atomic<std::uint64_t> now_;
};

SystemClock& system_clock();

}  // namespace ci

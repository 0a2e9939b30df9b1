#include "ci/common/clock.hpp"

#include <chrono>

namespace ci {

std::uint64_t SystemClock::now() const {
  const auto since = std::chrono::system_clock::now().time_since_epoch();
  return static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::seconds>(since).count());
}

SystemClock& system_clock() {
  static SystemClock clock;
  return clock;
}

}  // namespace ci

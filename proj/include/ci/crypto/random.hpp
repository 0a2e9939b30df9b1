#pragma once

#include <array>
#include <cstdint>
#include <span>

#include "ci/common/bytes.hpp"

namespace ci::crypto {

/// Source of all protocol randomness: keys, cycle ids, voucher nonces,
/// tree seeds, chameleon randomizers and proof nonces.
class Rng {
 public:
  virtual ~Rng() = default;
  virtual void fill(std::span<std::uint8_t> out) = 0;

  Bytes bytes(std::size_t n) {
    Bytes out(n);
    fill(out);
    return out;
  }

  template <std::size_t N>
  std::array<std::uint8_t, N> array() {
    std::array<std::uint8_t, N> out{};
    fill(out);
    return out;
  }

  /// Uniform value in [0, bound); bound must be nonzero.
  std::uint64_t uniform(std::uint64_t bound);
};

/// Operating-system CSPRNG (OpenSSL RAND_bytes). Safe to share across threads.
class SystemRng final : public Rng {
 public:
  void fill(std::span<std::uint8_t> out) override;
};

/// Reproducible stream: SHA-256(seed || counter) blocks. For simulations and
/// tests only; not thread-safe.
class DeterministicRng final : public Rng {
 public:
  explicit DeterministicRng(std::uint64_t seed);
  explicit DeterministicRng(ByteView seed);
  void fill(std::span<std::uint8_t> out) override;

 private:
  Bytes seed_;
  std::uint64_t counter_ = 0;
  Digest block_{};
  std::size_t used_ = 32;
};

SystemRng& system_rng();

}  // namespace ci::crypto

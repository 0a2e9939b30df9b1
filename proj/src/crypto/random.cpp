#include "ci/crypto/random.hpp"

#include <openssl/evp.h>
#include <openssl/rand.h>

#include <limits>

#include "ci/common/error.hpp"

namespace ci::crypto {

std::uint64_t Rng::uniform(std::uint64_t bound) {
  if (bound == 0) throw Error(ErrorCode::kParameter, "uniform bound must be nonzero");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  for (;;) {
    const auto raw = array<8>();
    const std::uint64_t v = load_u64_be(raw);
    if (v < limit) return v % bound;
  }
}

void SystemRng::fill(std::span<std::uint8_t> out) {
  if (out.empty()) return;
  if (RAND_bytes(out.data(), static_cast<int>(out.size())) != 1) {
    throw Error(ErrorCode::kParameter, "RAND_bytes failed");
  }
}

DeterministicRng::DeterministicRng(std::uint64_t seed) { append_u64_be(seed_, seed); }

DeterministicRng::DeterministicRng(ByteView seed) : seed_(seed.begin(), seed.end()) {}

void DeterministicRng::fill(std::span<std::uint8_t> out) {
  for (auto& b : out) {
    if (used_ == block_.size()) {
      Bytes input = seed_;
      append_u64_be(input, counter_++);
      unsigned int len = 0;
      EVP_Digest(input.data(), input.size(), block_.data(), &len, EVP_sha256(), nullptr);
      used_ = 0;
    }
    b = block_[used_++];
  }
}

SystemRng& system_rng() {
  static SystemRng rng;
  return rng;
}

}  // namespace ci::crypto

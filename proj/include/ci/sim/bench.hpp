#pragma once

#include <cstddef>

#include "ci/crypto/group.hpp"
#include "ci/crypto/random.hpp"

namespace ci::sim {

struct ChameleonBench {
  std::size_t iterations = 0;
  double mean_sign_ms = 0;
  double mean_verify_ms = 0;
  double total_seconds = 0;
  bool all_verified = true;
};

/// Times chameleon_sign and chameleon_verify over a certificate payload with
/// fresh keys in `group`. Throws ErrorCode::kParameter when iterations == 0.
ChameleonBench bench_chameleon(std::size_t iterations, crypto::Rng& rng,
                               const crypto::GroupParams& group = crypto::production_group());

}  // namespace ci::sim

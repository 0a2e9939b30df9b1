#pragma once

#include <cstdint>

#include "ci/common/bytes.hpp"
#include "ci/crypto/chameleon.hpp"
#include "ci/crypto/signature.hpp"
#include "ci/crypto/trapdoor_proof.hpp"

namespace ci::model {

inline constexpr std::uint64_t kSecondsPerDay = 86400;
inline constexpr std::uint64_t kDefaultRetentionSeconds = 365 * kSecondsPerDay;

/// The insurance relationship between one customer and the insurer.
struct Contract {
  CustomerId customer;
  crypto::SigPublicKey insurer_key;
  crypto::SigPublicKey customer_key;
  crypto::ChameleonPublicKey chameleon_key;
  crypto::TrapdoorProof trapdoor_proof;
  std::uint64_t valid_from = 0;
  std::uint64_t valid_until = 0;
  /// ΔT: largest allowed t' - t within one cycle, in seconds.
  std::uint64_t max_update_interval = 0;
  /// Insurer signature over body().
  Bytes insurer_signature;

  Bytes body() const;
  Bytes encode() const;
  static Contract decode(ByteView encoded);
  friend bool operator==(const Contract&, const Contract&) = default;
};

/// Context the registration trapdoor proof is bound to.
Bytes registration_context(const crypto::SigPublicKey& insurer_key, const crypto::SigPublicKey& customer_key,
                           const crypto::ChameleonPublicKey& chameleon_key);

/// Term sanity, insurer signature, and trapdoor proof all check out under `insurer_key`.
bool contract_is_valid(const Contract& contract, const crypto::SigPublicKey& insurer_key);

/// Coverage rule: a cycle is covered iff t' - t <= ΔT (and t' >= t).
bool update_was_timely(std::uint64_t downloaded_at, std::uint64_t submitted_at, std::uint64_t max_update_interval);

}  // namespace ci::model

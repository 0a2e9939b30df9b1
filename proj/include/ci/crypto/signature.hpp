#pragma once

#include <cstdint>

#include "ci/common/bytes.hpp"

namespace ci::crypto {

class Rng;

/// Registered standard signature schemes behind Π.
enum class SchemeId : std::uint8_t {
  kEd25519 = 1,
};

struct SigPublicKey {
  SchemeId scheme = SchemeId::kEd25519;
  Bytes key;

  Bytes encode() const;
  static SigPublicKey decode(ByteView encoded);
  friend bool operator==(const SigPublicKey&, const SigPublicKey&) = default;
};

struct SigKeyPair {
  SchemeId scheme = SchemeId::kEd25519;
  Bytes public_key;
  Bytes secret_key;

  SigPublicKey public_part() const { return {scheme, public_key}; }

  Bytes encode() const;
  static SigKeyPair decode(ByteView encoded);
};

SigKeyPair generate_sig_keypair(Rng& rng);

/// Throws ErrorCode::kKeyFormat for a malformed secret key.
Bytes sign(const SigKeyPair& key, ByteView message);

/// Malformed keys or signatures simply fail verification.
bool verify(const SigPublicKey& key, ByteView message, ByteView signature);

}  // namespace ci::crypto

#pragma once

#include <array>
#include <initializer_list>

#include "ci/common/bytes.hpp"

namespace ci::crypto {

inline constexpr std::uint8_t kHashHPrefix = 0x68;    // 'h'
inline constexpr std::uint8_t kHashH28Prefix = 0x48;  // 'H'

using Digest28 = std::array<std::uint8_t, 28>;

Digest sha256(ByteView message);

/// Collision-resistant hash h: SHA-256 over 0x68 || message.
Digest hash_h(ByteView message);
Digest hash_h(std::initializer_list<ByteView> parts);

/// Random-oracle hash H sized for TLS random_bytes: first 28 bytes of
/// SHA-256 over 0x48 || message.
Digest28 hash_H28(ByteView message);

/// Keyed hash used as PRF for Merkle padding and permutation: h(key || message).
Digest prf(ByteView key, ByteView message);

}  // namespace ci::crypto

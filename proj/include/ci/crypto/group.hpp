#pragma once

#include "ci/crypto/bignum.hpp"

namespace ci::crypto {

/// Prime-order subgroup of Z_p^*: q | p-1, g of order q.
struct GroupParams {
  BigNum p;
  BigNum q;
  BigNum g;

  std::size_t element_size() const { return p.num_bytes(); }
  std::size_t scalar_size() const { return q.num_bytes(); }

  Bytes encode() const;
  static GroupParams decode(ByteView encoded);

  friend bool operator==(const GroupParams&, const GroupParams&) = default;
};

/// 2048-bit MODP group with a 256-bit prime-order subgroup (RFC 5114, 2.3).
const GroupParams& production_group();

/// Throws ErrorCode::kParameter unless p, q prime, q | p-1, 1 < g < p, g^q = 1.
void validate_group(const GroupParams& params);

/// True iff 1 < value < p and value^q = 1.
bool is_subgroup_element(const GroupParams& params, const BigNum& value);

}  // namespace ci::crypto

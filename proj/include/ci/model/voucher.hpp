#pragma once

#include <array>
#include <string>

#include "ci/common/bytes.hpp"

namespace ci::model {

inline constexpr std::string_view kPaddingDomain = "pad.invalid";

/// v = <customer, domain, cycleid, r>: the client's connection token.
struct Voucher {
  CustomerId customer;
  std::string domain;
  CycleId cycle_id;
  std::array<std::uint8_t, 32> nonce{};

  Bytes encode() const;
  static Voucher decode(ByteView encoded);
  bool is_padding() const { return domain == kPaddingDomain; }
  friend bool operator==(const Voucher&, const Voucher&) = default;
};

}  // namespace ci::model

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ci/common/bytes.hpp"

namespace ci::wire {

inline constexpr std::string_view kLabelCertificates = "Certificates";
inline constexpr std::string_view kLabelVouchers = "Vouchers";

using CertificateList = std::vector<Bytes>;

/// The tuple both customer and insurer sign at the start ("Certificates") and end
/// ("Vouchers") of every update cycle.
struct SignedPayload {
  std::string label;
  CustomerId customer;
  CycleId cycle_id;
  std::uint64_t timestamp = 0;
  Digest body_digest{};

  friend bool operator==(const SignedPayload&, const SignedPayload&) = default;
};

/// Throws ErrorCode::kEncoding for labels other than "Certificates" / "Vouchers".
Bytes encode_signed_payload(const SignedPayload& payload);
Bytes encode_signed_payload(std::string_view label, CustomerId customer, const CycleId& cycle_id,
                            std::uint64_t timestamp, const Digest& body_digest);
SignedPayload decode_signed_payload(ByteView encoded);

/// h over (4-byte BE index || 4-byte BE length || h(cert)) for each certificate
/// in order. Throws ErrorCode::kEncoding on an empty list.
Digest cert_list_digest(const CertificateList& certs);

Bytes encode_cert_list(const CertificateList& certs);
CertificateList decode_cert_list(ByteView encoded);

}  // namespace ci::wire

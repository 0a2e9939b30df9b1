#pragma once

#include "ci/model/voucher.hpp"
#include "ci/tls/transcript.hpp"

namespace ci::model {

/// Vch = <Cert_Bob, v, server signature over signed_params carrying H28(v)>.
struct VoucherEvidence {
  Bytes certificate;
  Voucher voucher;
  tls::HandshakeTranscript transcript;

  Bytes encode() const;
  static VoucherEvidence decode(ByteView encoded);
  friend bool operator==(const VoucherEvidence&, const VoucherEvidence&) = default;
};

/// client_random[4..32] equals H28(encode(voucher)).
bool embeds_voucher(const tls::HandshakeTranscript& transcript, const Voucher& voucher);

/// Both evidence invariants: voucher embedding and a valid server signature
/// under the certificate's key.
bool evidence_is_valid(const VoucherEvidence& evidence);

}  // namespace ci::model

#include "ci/model/evidence.hpp"

#include <algorithm>

#include "ci/crypto/hash.hpp"
#include "ci/wire/tlv.hpp"

namespace ci::model {

using wire::Tag;

Bytes VoucherEvidence::encode() const {
  return wire::TlvWriter()
      .bytes(Tag::kCertDer, certificate)
      .raw(voucher.encode())
      .raw(transcript.encode())
      .finish(Tag::kVoucherEvidence);
}

VoucherEvidence VoucherEvidence::decode(ByteView encoded) {
  wire::TlvReader r(wire::open_record(encoded, Tag::kVoucherEvidence));
  VoucherEvidence e;
  const ByteView cert = r.bytes(Tag::kCertDer);
  e.certificate.assign(cert.begin(), cert.end());
  e.voucher = Voucher::decode(r.element(Tag::kVoucher));
  e.transcript = tls::HandshakeTranscript::decode(r.element(Tag::kHandshakeTranscript));
  r.expect_end();
  return e;
}

bool embeds_voucher(const tls::HandshakeTranscript& transcript, const Voucher& voucher) {
  const crypto::Digest28 expected = crypto::hash_H28(voucher.encode());
  return std::equal(expected.begin(), expected.end(), transcript.client_random.begin() + 4);
}

bool evidence_is_valid(const VoucherEvidence& evidence) {
  if (!embeds_voucher(evidence.transcript, evidence.voucher)) return false;
  return crypto::verify_with_certificate(evidence.certificate, evidence.transcript.sig_alg,
                                         evidence.transcript.signed_params_input(), evidence.transcript.signature);
}

}  // namespace ci::model

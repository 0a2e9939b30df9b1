#include "ci/wire/payload.hpp"

#include "ci/common/error.hpp"
#include "ci/crypto/hash.hpp"
#include "ci/wire/tlv.hpp"

namespace ci::wire {

namespace {

void check_label(std::string_view label) {
  if (label != kLabelCertificates && label != kLabelVouchers) {
    throw Error(ErrorCode::kEncoding, "unknown payload label '" + std::string(label) + "'");
  }
}

}  // namespace

Bytes encode_signed_payload(std::string_view label, CustomerId customer, const CycleId& cycle_id,
                            std::uint64_t timestamp, const Digest& body_digest) {
  check_label(label);
  return TlvWriter()
      .str(Tag::kLabel, label)
      .u64(Tag::kCustomer, customer.value)
      .bytes(Tag::kCycleId, cycle_id.bytes)
      .u64(Tag::kTimestamp, timestamp)
      .bytes(Tag::kBodyDigest, body_digest)
      .finish(Tag::kSignedPayload);
}

Bytes encode_signed_payload(const SignedPayload& p) {
  return encode_signed_payload(p.label, p.customer, p.cycle_id, p.timestamp, p.body_digest);
}

SignedPayload decode_signed_payload(ByteView encoded) {
  TlvReader r(open_record(encoded, Tag::kSignedPayload));
  SignedPayload p;
  p.label = r.str(Tag::kLabel);
  check_label(p.label);
  p.customer.value = r.u64(Tag::kCustomer);
  p.cycle_id.bytes = r.fixed<32>(Tag::kCycleId);
  p.timestamp = r.u64(Tag::kTimestamp);
  p.body_digest = r.fixed<32>(Tag::kBodyDigest);
  r.expect_end();
  return p;
}

Digest cert_list_digest(const CertificateList& certs) {
  if (certs.empty()) throw Error(ErrorCode::kEncoding, "certificate list must not be empty");
  Bytes input;
  input.reserve(certs.size() * 40);
  for (std::size_t i = 0; i < certs.size(); ++i) {
    append_u32_be(input, static_cast<std::uint32_t>(i));
    append_u32_be(input, static_cast<std::uint32_t>(certs[i].size()));
    append(input, crypto::hash_h(certs[i]));
  }
  return crypto::hash_h(input);
}

Bytes encode_cert_list(const CertificateList& certs) {
  TlvWriter w;
  for (const auto& c : certs) w.bytes(Tag::kCertDer, c);
  return w.finish(Tag::kCertList);
}

CertificateList decode_cert_list(ByteView encoded) {
  TlvReader r(open_record(encoded, Tag::kCertList));
  CertificateList out;
  while (!r.at_end()) {
    const ByteView c = r.bytes(Tag::kCertDer);
    out.emplace_back(c.begin(), c.end());
  }
  return out;
}

}  // namespace ci::wire

#include "ci/model/claim.hpp"

#include "ci/wire/tlv.hpp"

namespace ci::model {

using wire::Tag;

Bytes Claim::encode() const {
  const auto& params = contract.chameleon_key.params;
  const Bytes cycle_bytes = wire::TlvWriter()
                                .raw(wire::encode_cert_list(cycle.certificates))
                                .bytes(Tag::kCycleId, cycle.cycle_id.bytes)
                                .u64(Tag::kTimestamp, cycle.downloaded_at)
                                .u64(Tag::kTimestamp, cycle.submitted_at)
                                .raw(cycle.certs_signature.encode(params))
                                .raw(cycle.vouchers_signature.encode(params))
                                .bytes(Tag::kHash, cycle.voucher_root)
                                .finish(Tag::kCycleEvidence);
  return wire::TlvWriter()
      .raw(contract.encode())
      .raw(cycle_bytes)
      .raw(inclusion.encode())
      .raw(evidence.encode())
      .u64(Tag::kIndex, cert_index)
      .finish(Tag::kClaim);
}

Claim Claim::decode(ByteView encoded) {
  wire::TlvReader r(wire::open_record(encoded, Tag::kClaim));
  Claim c;
  c.contract = Contract::decode(r.element(Tag::kContract));
  wire::TlvReader cy(r.bytes(Tag::kCycleEvidence));
  c.cycle.certificates = wire::decode_cert_list(cy.element(Tag::kCertList));
  c.cycle.cycle_id.bytes = cy.fixed<32>(Tag::kCycleId);
  c.cycle.downloaded_at = cy.u64(Tag::kTimestamp);
  c.cycle.submitted_at = cy.u64(Tag::kTimestamp);
  c.cycle.certs_signature = crypto::ChameleonSignature::decode(cy.element(Tag::kChameleonSignature));
  c.cycle.vouchers_signature = crypto::ChameleonSignature::decode(cy.element(Tag::kChameleonSignature));
  c.cycle.voucher_root = cy.fixed<32>(Tag::kHash);
  cy.expect_end();
  c.inclusion = merkle::InclusionProof::decode(r.element(Tag::kInclusionProof));
  c.evidence = VoucherEvidence::decode(r.element(Tag::kVoucherEvidence));
  c.cert_index = r.u64(Tag::kIndex);
  r.expect_end();
  return c;
}

Bytes certificates_payload(CustomerId customer, const CycleEvidence& cycle) {
  return wire::encode_signed_payload(wire::kLabelCertificates, customer, cycle.cycle_id, cycle.downloaded_at,
                                     wire::cert_list_digest(cycle.certificates));
}

Bytes vouchers_payload(CustomerId customer, const CycleEvidence& cycle) {
  return wire::encode_signed_payload(wire::kLabelVouchers, customer, cycle.cycle_id, cycle.submitted_at,
                                     cycle.voucher_root);
}

}  // namespace ci::model

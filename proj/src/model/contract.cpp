#include "ci/model/contract.hpp"

#include "ci/wire/tlv.hpp"

namespace ci::model {

using wire::Tag;

Bytes Contract::body() const {
  const auto& params = chameleon_key.params;
  return wire::TlvWriter()
      .u64(Tag::kCustomer, customer.value)
      .raw(insurer_key.encode())
      .raw(customer_key.encode())
      .raw(chameleon_key.encode())
      .raw(trapdoor_proof.encode(params))
      .u64(Tag::kTimestamp, valid_from)
      .u64(Tag::kTimestamp, valid_until)
      .u64(Tag::kDuration, max_update_interval)
      .finish(Tag::kContractBody);
}

Bytes Contract::encode() const {
  return wire::TlvWriter().raw(body()).bytes(Tag::kSignature, insurer_signature).finish(Tag::kContract);
}

Contract Contract::decode(ByteView encoded) {
  wire::TlvReader outer(wire::open_record(encoded, Tag::kContract));
  wire::TlvReader r(wire::open_record(outer.element(Tag::kContractBody), Tag::kContractBody));
  Contract c;
  c.customer.value = r.u64(Tag::kCustomer);
  c.insurer_key = crypto::SigPublicKey::decode(r.element(Tag::kSigPublicKey));
  c.customer_key = crypto::SigPublicKey::decode(r.element(Tag::kSigPublicKey));
  c.chameleon_key = crypto::ChameleonPublicKey::decode(r.element(Tag::kChameleonPublicKey));
  c.trapdoor_proof = crypto::TrapdoorProof::decode(r.element(Tag::kTrapdoorProof));
  c.valid_from = r.u64(Tag::kTimestamp);
  c.valid_until = r.u64(Tag::kTimestamp);
  c.max_update_interval = r.u64(Tag::kDuration);
  r.expect_end();
  const ByteView sig = outer.bytes(Tag::kSignature);
  c.insurer_signature.assign(sig.begin(), sig.end());
  outer.expect_end();
  return c;
}

Bytes registration_context(const crypto::SigPublicKey& insurer_key, const crypto::SigPublicKey& customer_key,
                           const crypto::ChameleonPublicKey& chameleon_key) {
  return wire::TlvWriter()
      .raw(insurer_key.encode())
      .raw(customer_key.encode())
      .raw(chameleon_key.encode())
      .finish(Tag::kRegistrationContext);
}

bool contract_is_valid(const Contract& contract, const crypto::SigPublicKey& insurer_key) {
  if (!(contract.insurer_key == insurer_key)) return false;
  if (contract.valid_from >= contract.valid_until || contract.max_update_interval == 0) return false;
  if (!crypto::verify(insurer_key, contract.body(), contract.insurer_signature)) return false;
  const Bytes ctx = registration_context(contract.insurer_key, contract.customer_key, contract.chameleon_key);
  return crypto::verify_trapdoor(contract.chameleon_key, ctx, contract.trapdoor_proof);
}

bool update_was_timely(std::uint64_t downloaded_at, std::uint64_t submitted_at, std::uint64_t max_update_interval) {
  return submitted_at >= downloaded_at && submitted_at - downloaded_at <= max_update_interval;
}

}  // namespace ci::model

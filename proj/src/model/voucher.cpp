#include "ci/model/voucher.hpp"

#include "ci/wire/tlv.hpp"

namespace ci::model {

using wire::Tag;

Bytes Voucher::encode() const {
  return wire::TlvWriter()
      .u64(Tag::kCustomer, customer.value)
      .str(Tag::kDomain, domain)
      .bytes(Tag::kCycleId, cycle_id.bytes)
      .bytes(Tag::kNonce, nonce)
      .finish(Tag::kVoucher);
}

Voucher Voucher::decode(ByteView encoded) {
  wire::TlvReader r(wire::open_record(encoded, Tag::kVoucher));
  Voucher v;
  v.customer.value = r.u64(Tag::kCustomer);
  v.domain = r.str(Tag::kDomain);
  v.cycle_id.bytes = r.fixed<32>(Tag::kCycleId);
  v.nonce = r.fixed<32>(Tag::kNonce);
  r.expect_end();
  return v;
}

}  // namespace ci::model

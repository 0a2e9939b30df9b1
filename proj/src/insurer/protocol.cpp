#include "ci/insurer/protocol.hpp"

#include "ci/wire/tlv.hpp"

namespace ci::insurer {

using wire::Tag;

Bytes ChameleonRecord::encode(const crypto::GroupParams& params) const {
  return wire::TlvWriter()
      .u64(Tag::kCustomer, customer.value)
      .bytes(Tag::kMessage, message)
      .bytes(Tag::kScalar, randomizer.to_bytes(params.scalar_size()))
      .bytes(Tag::kElement, chameleon_value.to_bytes(params.element_size()))
      .finish(Tag::kChameleonRecord);
}

ChameleonRecord ChameleonRecord::decode(ByteView encoded) {
  wire::TlvReader r(wire::open_record(encoded, Tag::kChameleonRecord));
  ChameleonRecord rec;
  rec.customer.value = r.u64(Tag::kCustomer);
  const ByteView msg = r.bytes(Tag::kMessage);
  rec.message.assign(msg.begin(), msg.end());
  rec.randomizer = crypto::BigNum::from_bytes(r.bytes(Tag::kScalar));
  rec.chameleon_value = crypto::BigNum::from_bytes(r.bytes(Tag::kElement));
  r.expect_end();
  return rec;
}

Bytes encode_request(const RegisterRequest& req) {
  return wire::TlvWriter()
      .raw(req.customer_key.encode())
      .raw(req.chameleon_key.encode())
      .raw(req.trapdoor_proof.encode(req.chameleon_key.params))
      .u64(Tag::kDuration, req.max_update_interval)
      .finish(Tag::kRegisterRequest);
}

Bytes encode_request(const BeginCycleRequest& req) {
  return wire::TlvWriter().u64(Tag::kCustomer, req.customer.value).finish(Tag::kBeginCycleRequest);
}

Bytes encode_request(const AckCertsRequest& req) {
  return wire::TlvWriter()
      .u64(Tag::kCustomer, req.customer.value)
      .bytes(Tag::kCycleId, req.cycle_id.bytes)
      .u64(Tag::kTimestamp, req.downloaded_at)
      .bytes(Tag::kSignature, req.customer_signature)
      .finish(Tag::kAckCertsRequest);
}

Bytes encode_request(const SubmitVouchersRequest& req) {
  return wire::TlvWriter()
      .u64(Tag::kCustomer, req.customer.value)
      .bytes(Tag::kCycleId, req.cycle_id.bytes)
      .u64(Tag::kTimestamp, req.submitted_at)
      .bytes(Tag::kHash, req.voucher_root)
      .bytes(Tag::kSignature, req.customer_signature)
      .finish(Tag::kSubmitVouchersRequest);
}

Bytes encode_request(const RecordQuery& req) {
  const Bytes query = wire::TlvWriter()
                          .u8(Tag::kFlag, static_cast<std::uint8_t>(req.kind))
                          .bytes(Tag::kHash, req.key)
                          .finish(Tag::kRecordQuery);
  return wire::TlvWriter().raw(query).finish(Tag::kLookupRecordRequest);
}

RegisterRequest decode_register_request(ByteView body) {
  wire::TlvReader r(body);
  RegisterRequest req;
  req.customer_key = crypto::SigPublicKey::decode(r.element(Tag::kSigPublicKey));
  req.chameleon_key = crypto::ChameleonPublicKey::decode(r.element(Tag::kChameleonPublicKey));
  req.trapdoor_proof = crypto::TrapdoorProof::decode(r.element(Tag::kTrapdoorProof));
  req.max_update_interval = r.u64(Tag::kDuration);
  r.expect_end();
  return req;
}

BeginCycleRequest decode_begin_cycle_request(ByteView body) {
  wire::TlvReader r(body);
  BeginCycleRequest req;
  req.customer.value = r.u64(Tag::kCustomer);
  r.expect_end();
  return req;
}

AckCertsRequest decode_ack_certs_request(ByteView body) {
  wire::TlvReader r(body);
  AckCertsRequest req;
  req.customer.value = r.u64(Tag::kCustomer);
  req.cycle_id.bytes = r.fixed<32>(Tag::kCycleId);
  req.downloaded_at = r.u64(Tag::kTimestamp);
  const ByteView sig = r.bytes(Tag::kSignature);
  req.customer_signature.assign(sig.begin(), sig.end());
  r.expect_end();
  return req;
}

SubmitVouchersRequest decode_submit_vouchers_request(ByteView body) {
  wire::TlvReader r(body);
  SubmitVouchersRequest req;
  req.customer.value = r.u64(Tag::kCustomer);
  req.cycle_id.bytes = r.fixed<32>(Tag::kCycleId);
  req.submitted_at = r.u64(Tag::kTimestamp);
  req.voucher_root = r.fixed<32>(Tag::kHash);
  const ByteView sig = r.bytes(Tag::kSignature);
  req.customer_signature.assign(sig.begin(), sig.end());
  r.expect_end();
  return req;
}

RecordQuery decode_record_query(ByteView body) {
  wire::TlvReader outer(body);
  wire::TlvReader r(wire::open_record(outer.element(Tag::kRecordQuery), Tag::kRecordQuery));
  outer.expect_end();
  RecordQuery q;
  const auto kind = r.u8(Tag::kFlag);
  if (kind != 1 && kind != 2) throw Error(ErrorCode::kParse, "unknown record query kind");
  q.kind = static_cast<RecordQuery::Kind>(kind);
  const ByteView key = r.bytes(Tag::kHash);
  q.key.assign(key.begin(), key.end());
  r.expect_end();
  return q;
}

Bytes encode_register_response(const model::Contract& contract) {
  return wire::TlvWriter().raw(contract.encode()).finish(Tag::kRegisterResponse);
}

Bytes encode_begin_cycle_response(const CycleOffer& offer) {
  return wire::TlvWriter()
      .bytes(Tag::kCycleId, offer.cycle_id.bytes)
      .raw(wire::encode_cert_list(offer.certificates))
      .u64(Tag::kVersion, offer.list_version)
      .finish(Tag::kBeginCycleResponse);
}

Bytes encode_ack_certs_response(const crypto::ChameleonSignature& sig, const crypto::GroupParams& params) {
  return wire::TlvWriter().raw(sig.encode(params)).finish(Tag::kAckCertsResponse);
}

Bytes encode_submit_vouchers_response(const SubmitResult& result, const crypto::GroupParams& params) {
  return wire::TlvWriter()
      .raw(result.signature.encode(params))
      .u8(Tag::kFlag, result.covered ? 1 : 0)
      .finish(Tag::kSubmitVouchersResponse);
}

Bytes encode_lookup_response(const std::optional<ChameleonRecord>& record, const crypto::GroupParams& params) {
  wire::TlvWriter w;
  if (record) w.raw(record->encode(params));
  return w.finish(Tag::kLookupRecordResponse);
}

Bytes encode_error_response(ErrorCode code, std::string_view text) {
  return wire::TlvWriter()
      .u8(Tag::kErrorCode, static_cast<std::uint8_t>(code))
      .str(Tag::kText, text)
      .finish(Tag::kErrorResponse);
}

ByteView InsurerStub::exchange(const Bytes& request, Tag expected, Bytes& storage) {
  storage = channel_.call(request);
  if (filter_) storage = filter_(std::move(storage));
  wire::TlvReader head(storage);
  if (!head.at_end() && head.peek_tag() == Tag::kErrorResponse) {
    wire::TlvReader r(wire::open_record(storage, Tag::kErrorResponse));
    const auto code = r.u8(Tag::kErrorCode);
    std::string text = r.str(Tag::kText);
    if (code > static_cast<std::uint8_t>(ErrorCode::kRejected)) {
      throw Error(ErrorCode::kParse, "error response with unknown code");
    }
    throw Error(static_cast<ErrorCode>(code), "insurer: " + text);
  }
  return wire::open_record(storage, expected);
}

model::Contract InsurerStub::register_customer(const RegisterRequest& req) {
  Bytes storage;
  wire::TlvReader r(exchange(encode_request(req), Tag::kRegisterResponse, storage));
  auto contract = model::Contract::decode(r.element(Tag::kContract));
  r.expect_end();
  return contract;
}

CycleOffer InsurerStub::begin_cycle(CustomerId customer) {
  Bytes storage;
  wire::TlvReader r(exchange(encode_request(BeginCycleRequest{customer}), Tag::kBeginCycleResponse, storage));
  CycleOffer offer;
  offer.cycle_id.bytes = r.fixed<32>(Tag::kCycleId);
  offer.certificates = wire::decode_cert_list(r.element(Tag::kCertList));
  offer.list_version = r.u64(Tag::kVersion);
  r.expect_end();
  return offer;
}

crypto::ChameleonSignature InsurerStub::ack_certificates(const AckCertsRequest& req) {
  Bytes storage;
  wire::TlvReader r(exchange(encode_request(req), Tag::kAckCertsResponse, storage));
  auto sig = crypto::ChameleonSignature::decode(r.element(Tag::kChameleonSignature));
  r.expect_end();
  return sig;
}

SubmitResult InsurerStub::submit_vouchers(const SubmitVouchersRequest& req) {
  Bytes storage;
  wire::TlvReader r(exchange(encode_request(req), Tag::kSubmitVouchersResponse, storage));
  SubmitResult result;
  result.signature = crypto::ChameleonSignature::decode(r.element(Tag::kChameleonSignature));
  result.covered = r.u8(Tag::kFlag) != 0;
  r.expect_end();
  return result;
}

std::optional<ChameleonRecord> InsurerStub::lookup_record(const RecordQuery& query) {
  Bytes storage;
  wire::TlvReader r(exchange(encode_request(query), Tag::kLookupRecordResponse, storage));
  if (r.at_end()) return std::nullopt;
  auto rec = ChameleonRecord::decode(r.element(Tag::kChameleonRecord));
  r.expect_end();
  return rec;
}

}  // namespace ci::insurer

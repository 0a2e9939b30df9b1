#include "ci/wire/tlv.hpp"

#include "ci/common/error.hpp"

namespace ci::wire {

Bytes encode_element(Tag tag, ByteView value) {
  if (value.size() > kMaxValueSize) throw Error(ErrorCode::kEncoding, "TLV value too large");
  Bytes out;
  out.reserve(kHeaderSize + value.size());
  out.push_back(static_cast<std::uint8_t>(tag));
  append_u32_be(out, static_cast<std::uint32_t>(value.size()));
  append(out, value);
  return out;
}

TlvWriter& TlvWriter::bytes(Tag tag, ByteView value) {
  if (value.size() > kMaxValueSize) throw Error(ErrorCode::kEncoding, "TLV value too large");
  body_.push_back(static_cast<std::uint8_t>(tag));
  append_u32_be(body_, static_cast<std::uint32_t>(value.size()));
  append(body_, value);
  return *this;
}

TlvWriter& TlvWriter::str(Tag tag, std::string_view value) { return bytes(tag, as_bytes(value)); }

TlvWriter& TlvWriter::u8(Tag tag, std::uint8_t value) {
  const std::uint8_t b[1] = {value};
  return bytes(tag, b);
}

TlvWriter& TlvWriter::u64(Tag tag, std::uint64_t value) {
  Bytes b;
  append_u64_be(b, value);
  return bytes(tag, b);
}

TlvWriter& TlvWriter::raw(ByteView encoded_element) {
  append(body_, encoded_element);
  return *this;
}

Bytes TlvWriter::finish(Tag record_tag) const { return encode_element(record_tag, body_); }

Tag TlvReader::peek_tag() const {
  if (at_end()) throw Error(ErrorCode::kParse, "unexpected end of record");
  return static_cast<Tag>(data_[pos_]);
}

TlvReader::Element TlvReader::next(Tag expected) {
  if (data_.size() - pos_ < kHeaderSize) {
    throw Error(ErrorCode::kParse, "truncated TLV header, expected " + std::string(tag_name(expected)));
  }
  const Tag tag = static_cast<Tag>(data_[pos_]);
  if (tag != expected) {
    throw Error(ErrorCode::kParse, "expected tag " + std::string(tag_name(expected)) + ", found " +
                                       std::string(tag_name(tag)));
  }
  const std::uint32_t len = load_u32_be(data_.subspan(pos_ + 1, 4));
  if (len > data_.size() - pos_ - kHeaderSize) {
    throw Error(ErrorCode::kParse, "TLV length exceeds record for " + std::string(tag_name(expected)));
  }
  Element e{tag, data_.subspan(pos_ + kHeaderSize, len), data_.subspan(pos_, kHeaderSize + len)};
  pos_ += kHeaderSize + len;
  return e;
}

ByteView TlvReader::bytes(Tag tag) { return next(tag).value; }

std::string TlvReader::str(Tag tag) {
  const ByteView v = bytes(tag);
  return std::string(v.begin(), v.end());
}

std::uint8_t TlvReader::u8(Tag tag) {
  const ByteView v = bytes(tag);
  if (v.size() != 1) throw Error(ErrorCode::kParse, "u8 field has wrong length");
  return v[0];
}

std::uint64_t TlvReader::u64(Tag tag) {
  const ByteView v = bytes(tag);
  if (v.size() != 8) throw Error(ErrorCode::kParse, "u64 field has wrong length");
  return load_u64_be(v);
}

ByteView TlvReader::element(Tag tag) { return next(tag).whole; }

void TlvReader::expect_end() const {
  if (!at_end()) throw Error(ErrorCode::kParse, "trailing bytes in record");
}

ByteView open_record(ByteView encoded, Tag tag) {
  TlvReader outer(encoded);
  const ByteView body = outer.bytes(tag);
  outer.expect_end();
  return body;
}

std::string_view tag_name(Tag tag) {
  switch (tag) {
    case Tag::kLabel: return "LABEL";
    case Tag::kCustomer: return "CUSTOMER";
    case Tag::kCycleId: return "CYCLE_ID";
    case Tag::kTimestamp: return "TIMESTAMP";
    case Tag::kBodyDigest: return "BODY_DIGEST";
    case Tag::kDomain: return "DOMAIN";
    case Tag::kNonce: return "NONCE";
    case Tag::kGroupP: return "GROUP_P";
    case Tag::kGroupQ: return "GROUP_Q";
    case Tag::kGroupG: return "GROUP_G";
    case Tag::kElement: return "ELEMENT";
    case Tag::kScalar: return "SCALAR";
    case Tag::kSignature: return "SIGNATURE";
    case Tag::kPublicKey: return "PUBLIC_KEY";
    case Tag::kSecretKey: return "SECRET_KEY";
    case Tag::kSchemeId: return "SCHEME_ID";
    case Tag::kCertDer: return "CERT_DER";
    case Tag::kIndex: return "INDEX";
    case Tag::kCount: return "COUNT";
    case Tag::kHash: return "HASH";
    case Tag::kRandom: return "RANDOM";
    case Tag::kDhParams: return "DH_PARAMS";
    case Tag::kSigAlg: return "SIG_ALG";
    case Tag::kDuration: return "DURATION";
    case Tag::kFlag: return "FLAG";
    case Tag::kSeed: return "SEED";
    case Tag::kMessage: return "MESSAGE";
    case Tag::kText: return "TEXT";
    case Tag::kErrorCode: return "ERROR_CODE";
    case Tag::kPrivateKeyDer: return "PRIVATE_KEY_DER";
    case Tag::kVersion: return "VERSION";
    case Tag::kSignedPayload: return "SIGNED_PAYLOAD";
    case Tag::kSigContext: return "SIG_CONTEXT";
    case Tag::kChameleonDigestInput: return "CHAMELEON_DIGEST_INPUT";
    case Tag::kChameleonSignature: return "CHAMELEON_SIGNATURE";
    case Tag::kGroupParams: return "GROUP_PARAMS";
    case Tag::kChameleonPublicKey: return "CHAMELEON_PUBLIC_KEY";
    case Tag::kTrapdoorProof: return "TRAPDOOR_PROOF";
    case Tag::kSigPublicKey: return "SIG_PUBLIC_KEY";
    case Tag::kSigKeyPair: return "SIG_KEYPAIR";
    case Tag::kChameleonKeyPair: return "CHAMELEON_KEYPAIR";
    case Tag::kTrapdoorChallengeInput: return "TRAPDOOR_CHALLENGE_INPUT";
    case Tag::kRegistrationContext: return "REGISTRATION_CONTEXT";
    case Tag::kCertListDigestInput: return "CERT_LIST_DIGEST_INPUT";
    case Tag::kContract: return "CONTRACT";
    case Tag::kContractBody: return "CONTRACT_BODY";
    case Tag::kVoucher: return "VOUCHER";
    case Tag::kHandshakeTranscript: return "HANDSHAKE_TRANSCRIPT";
    case Tag::kVoucherEvidence: return "VOUCHER_EVIDENCE";
    case Tag::kCertList: return "CERT_LIST";
    case Tag::kInclusionProof: return "INCLUSION_PROOF";
    case Tag::kClaim: return "CLAIM";
    case Tag::kCycleEvidence: return "CYCLE_EVIDENCE";
    case Tag::kRollbackDelta: return "ROLLBACK_DELTA";
    case Tag::kRollbackLog: return "ROLLBACK_LOG";
    case Tag::kCycleRecord: return "CYCLE_RECORD";
    case Tag::kArchiveEntry: return "ARCHIVE_ENTRY";
    case Tag::kList: return "LIST";
    case Tag::kDeltaAdded: return "DELTA_ADDED";
    case Tag::kDeltaRemoved: return "DELTA_REMOVED";
    case Tag::kInsurerState: return "INSURER_STATE";
    case Tag::kChameleonRecord: return "CHAMELEON_RECORD";
    case Tag::kContractState: return "CONTRACT_STATE";
    case Tag::kCertListVersion: return "CERT_LIST_VERSION";
    case Tag::kClientState: return "CLIENT_STATE";
    case Tag::kServerIdentity: return "SERVER_IDENTITY";
    case Tag::kInsurerCycle: return "INSURER_CYCLE";
    case Tag::kOpenCycle: return "OPEN_CYCLE";
    case Tag::kClientArchive: return "CLIENT_ARCHIVE";
    case Tag::kRecordQuery: return "RECORD_QUERY";
    case Tag::kRegisterRequest: return "REGISTER";
    case Tag::kBeginCycleRequest: return "BEGIN_CYCLE";
    case Tag::kAckCertsRequest: return "ACK_CERTS";
    case Tag::kSubmitVouchersRequest: return "SUBMIT_VOUCHERS";
    case Tag::kLookupRecordRequest: return "LOOKUP_RECORD";
    case Tag::kRegisterResponse: return "REGISTER_OK";
    case Tag::kBeginCycleResponse: return "BEGIN_CYCLE_OK";
    case Tag::kAckCertsResponse: return "ACK_CERTS_OK";
    case Tag::kSubmitVouchersResponse: return "SUBMIT_VOUCHERS_OK";
    case Tag::kLookupRecordResponse: return "LOOKUP_RECORD_OK";
    case Tag::kErrorResponse: return "ERROR";
  }
  return "UNKNOWN_TAG";
}

}  // namespace ci::wire

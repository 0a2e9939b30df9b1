#pragma once

#include <functional>
#include <optional>
#include <string>

#include "ci/common/bytes.hpp"
#include "ci/common/error.hpp"
#include "ci/crypto/chameleon.hpp"
#include "ci/crypto/signature.hpp"
#include "ci/crypto/trapdoor_proof.hpp"
#include "ci/model/contract.hpp"
#include "ci/wire/payload.hpp"
#include "ci/wire/tags.hpp"

namespace ci::insurer {

/// One entry of the append-only log of everything the insurer chameleon-signed.
struct ChameleonRecord {
  CustomerId customer;
  Bytes message;
  crypto::BigNum randomizer;
  crypto::BigNum chameleon_value;

  Bytes encode(const crypto::GroupParams& params) const;
  static ChameleonRecord decode(ByteView encoded);
  friend bool operator==(const ChameleonRecord&, const ChameleonRecord&) = default;
};

struct RegisterRequest {
  crypto::SigPublicKey customer_key;
  crypto::ChameleonPublicKey chameleon_key;
  crypto::TrapdoorProof trapdoor_proof;
  /// Requested ΔT in seconds; zero selects the insurer default.
  std::uint64_t max_update_interval = 0;
};

struct BeginCycleRequest {
  CustomerId customer;
};

struct CycleOffer {
  CycleId cycle_id;
  wire::CertificateList certificates;
  std::uint64_t list_version = 0;
};

struct AckCertsRequest {
  CustomerId customer;
  CycleId cycle_id;
  std::uint64_t downloaded_at = 0;
  Bytes customer_signature;
};

struct SubmitVouchersRequest {
  CustomerId customer;
  CycleId cycle_id;
  std::uint64_t submitted_at = 0;
  Digest voucher_root{};
  Bytes customer_signature;
};

struct SubmitResult {
  crypto::ChameleonSignature signature;
  bool covered = false;
};

/// By chameleon hash value (element bytes) or by h(message).
struct RecordQuery {
  enum class Kind : std::uint8_t { kChameleonValue = 1, kMessageDigest = 2 };
  Kind kind = Kind::kChameleonValue;
  Bytes key;
};

/// Request/response codec. Each request and response is a single TLV record
/// whose tag names the endpoint; errors travel as an ERROR record.
Bytes encode_request(const RegisterRequest& req);
Bytes encode_request(const BeginCycleRequest& req);
Bytes encode_request(const AckCertsRequest& req);
Bytes encode_request(const SubmitVouchersRequest& req);
Bytes encode_request(const RecordQuery& req);

RegisterRequest decode_register_request(ByteView body);
BeginCycleRequest decode_begin_cycle_request(ByteView body);
AckCertsRequest decode_ack_certs_request(ByteView body);
SubmitVouchersRequest decode_submit_vouchers_request(ByteView body);
RecordQuery decode_record_query(ByteView body);

Bytes encode_register_response(const model::Contract& contract);
Bytes encode_begin_cycle_response(const CycleOffer& offer);
Bytes encode_ack_certs_response(const crypto::ChameleonSignature& sig, const crypto::GroupParams& params);
Bytes encode_submit_vouchers_response(const SubmitResult& result, const crypto::GroupParams& params);
Bytes encode_lookup_response(const std::optional<ChameleonRecord>& record, const crypto::GroupParams& params);
Bytes encode_error_response(ErrorCode code, std::string_view text);

/// Transport carrying one request and returning one response.
class Channel {
 public:
  virtual ~Channel() = default;
  virtual Bytes call(ByteView request) = 0;
};

/// Typed client stub over a Channel. Error responses are rethrown as ci::Error
/// with the remote code.
class InsurerStub {
 public:
  explicit InsurerStub(Channel& channel) : channel_(channel) {}

  model::Contract register_customer(const RegisterRequest& req);
  CycleOffer begin_cycle(CustomerId customer);
  crypto::ChameleonSignature ack_certificates(const AckCertsRequest& req);
  SubmitResult submit_vouchers(const SubmitVouchersRequest& req);
  std::optional<ChameleonRecord> lookup_record(const RecordQuery& query);

  /// Passes a response record through the tampering hook before decoding; in-transit corruption tests use it.
  void set_response_filter(std::function<Bytes(Bytes)> filter) { filter_ = std::move(filter); }

 private:
  ByteView exchange(const Bytes& request, wire::Tag expected, Bytes& storage);
  Channel& channel_;
  std::function<Bytes(Bytes)> filter_;
};

}  // namespace ci::insurer

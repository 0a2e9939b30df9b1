#pragma once

#include "ci/crypto/chameleon.hpp"
#include "ci/merkle/proof.hpp"
#include "ci/model/contract.hpp"
#include "ci/model/evidence.hpp"
#include "ci/wire/payload.hpp"

namespace ci::model {

inline constexpr std::string_view kClaimFileExtension = ".ciclaim";

/// Everything the insurer countersigned in one cycle.
struct CycleEvidence {
  wire::CertificateList certificates;
  CycleId cycle_id;
  std::uint64_t downloaded_at = 0;  // t
  std::uint64_t submitted_at = 0;   // t'
  crypto::ChameleonSignature certs_signature;
  crypto::ChameleonSignature vouchers_signature;
  Digest voucher_root{};

  friend bool operator==(const CycleEvidence&, const CycleEvidence&) = default;
};

/// Self-contained insurance-case claim; verifiable with nothing but pk_IN.
struct Claim {
  Contract contract;
  CycleEvidence cycle;
  merkle::InclusionProof inclusion;
  VoucherEvidence evidence;
  std::uint64_t cert_index = 0;

  Bytes encode() const;
  static Claim decode(ByteView encoded);
  friend bool operator==(const Claim&, const Claim&) = default;
};

Bytes certificates_payload(CustomerId customer, const CycleEvidence& cycle);
Bytes vouchers_payload(CustomerId customer, const CycleEvidence& cycle);

}  // namespace ci::model

#pragma once

#include <optional>
#include <string_view>

#include "ci/crypto/chameleon.hpp"
#include "ci/insurer/protocol.hpp"
#include "ci/model/claim.hpp"

namespace ci::judge {

enum class Verdict {
  kAccept,
  kBadContract,
  kBadCertSig,
  kCertNotInList,
  kBadVoucherSig,
  kUpdateLate,
  kBadMerklePath,
  kVoucherMismatch,
  kBadTlsSig,
  kDomainMismatch,
  kOutsideTerm,
  kNotRogue,
};

std::string_view verdict_name(Verdict v);
/// Process exit code for a verdict: 0 for ACCEPT, 10-20 for the reject reasons.
int verdict_exit_code(Verdict v);

/// Checks the three-part proof of an insurance case against nothing but the
/// insurer's public key. `rogue_asserted` is the externally established fact
/// that the certificate is rogue; without it a fully valid claim is NOT_ROGUE.
Verdict verify_claim(const model::Claim& claim, const crypto::SigPublicKey& insurer_key, bool rogue_asserted);

/// Parses and verifies; throws ErrorCode::kParse for malformed claim bytes.
Verdict verify_claim_bytes(ByteView claim, const crypto::SigPublicKey& insurer_key, bool rogue_asserted);

enum class Ruling { kCustomerForged, kInsurerBound };

std::string_view ruling_name(Ruling r);

/// A customer presents `message` with a chameleon signature; the insurer answers
/// with the record it logged for that chameleon hash, if any. Throws
/// ErrorCode::kBadSignature when the contract or the presented signature does not verify.
Ruling resolve_denial(const model::Contract& contract, ByteView message,
                      const crypto::ChameleonSignature& signature,
                      const std::optional<insurer::ChameleonRecord>& record);

}  // namespace ci::judge

#pragma once

#include <cstdint>
#include <string_view>

namespace ci::wire {

// Tag table. Field tags live below 0x40, record tags in 0x40..0x7f,
// endpoint requests in 0x80..0xbf, responses in 0xc0..0xfe, and 0xff is the
// error response. docs/wire-format.md mirrors this table.
enum class Tag : std::uint8_t {
  // fields
  kLabel = 0x01,
  kCustomer = 0x02,
  kCycleId = 0x03,
  kTimestamp = 0x04,
  kBodyDigest = 0x05,
  kDomain = 0x06,
  kNonce = 0x07,
  kGroupP = 0x08,
  kGroupQ = 0x09,
  kGroupG = 0x0a,
  kElement = 0x0b,
  kScalar = 0x0c,
  kSignature = 0x0d,
  kPublicKey = 0x0e,
  kSecretKey = 0x0f,
  kSchemeId = 0x10,
  kCertDer = 0x11,
  kIndex = 0x12,
  kCount = 0x13,
  kHash = 0x14,
  kRandom = 0x15,
  kDhParams = 0x16,
  kSigAlg = 0x17,
  kDuration = 0x18,
  kFlag = 0x19,
  kSeed = 0x1a,
  kMessage = 0x1b,
  kText = 0x1c,
  kErrorCode = 0x1d,
  kPrivateKeyDer = 0x1e,
  kVersion = 0x1f,

  // records
  kSignedPayload = 0x40,
  kSigContext = 0x41,
  kChameleonDigestInput = 0x42,
  kChameleonSignature = 0x43,
  kGroupParams = 0x44,
  kChameleonPublicKey = 0x45,
  kTrapdoorProof = 0x46,
  kSigPublicKey = 0x47,
  kSigKeyPair = 0x48,
  kChameleonKeyPair = 0x49,
  kTrapdoorChallengeInput = 0x4a,
  kRegistrationContext = 0x4b,
  kCertListDigestInput = 0x4c,

  kContract = 0x50,
  kContractBody = 0x51,
  kVoucher = 0x52,
  kHandshakeTranscript = 0x53,
  kVoucherEvidence = 0x54,
  kCertList = 0x55,
  kInclusionProof = 0x56,
  kClaim = 0x57,
  kCycleEvidence = 0x58,
  kRollbackDelta = 0x59,
  kRollbackLog = 0x5a,
  kCycleRecord = 0x5b,
  kArchiveEntry = 0x5c,
  kList = 0x5d,
  kDeltaAdded = 0x5e,
  kDeltaRemoved = 0x5f,

  kInsurerState = 0x60,
  kChameleonRecord = 0x61,
  kContractState = 0x62,
  kCertListVersion = 0x63,
  kClientState = 0x64,
  kServerIdentity = 0x65,
  kInsurerCycle = 0x66,
  kOpenCycle = 0x67,
  kClientArchive = 0x68,
  kRecordQuery = 0x69,

  // endpoints
  kRegisterRequest = 0x81,
  kBeginCycleRequest = 0x82,
  kAckCertsRequest = 0x83,
  kSubmitVouchersRequest = 0x84,
  kLookupRecordRequest = 0x85,

  kRegisterResponse = 0xc1,
  kBeginCycleResponse = 0xc2,
  kAckCertsResponse = 0xc3,
  kSubmitVouchersResponse = 0xc4,
  kLookupRecordResponse = 0xc5,

  kErrorResponse = 0xff,
};

std::string_view tag_name(Tag tag);

}  // namespace ci::wire

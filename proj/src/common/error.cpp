#include "ci/common/error.hpp"

namespace ci {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kEncoding: return "ENCODING";
    case ErrorCode::kParse: return "PARSE";
    case ErrorCode::kKeyFormat: return "KEY_FORMAT";
    case ErrorCode::kParameter: return "PARAMETER";
    case ErrorCode::kSequencing: return "SEQUENCING";
    case ErrorCode::kRecency: return "RECENCY";
    case ErrorCode::kBadSignature: return "BAD_SIGNATURE";
    case ErrorCode::kUnknownCycle: return "UNKNOWN_CYCLE";
    case ErrorCode::kCapacity: return "CAPACITY";
    case ErrorCode::kNotFound: return "NOT_FOUND";
    case ErrorCode::kCorruption: return "CORRUPTION";
    case ErrorCode::kEvidenceRejected: return "EVIDENCE_REJECTED";
    case ErrorCode::kExpired: return "EXPIRED";
    case ErrorCode::kRegistration: return "REGISTRATION";
    case ErrorCode::kNetwork: return "NETWORK";
    case ErrorCode::kIo: return "IO";
    case ErrorCode::kRejected: return "REJECTED";
  }
  return "UNKNOWN";
}

}  // namespace ci

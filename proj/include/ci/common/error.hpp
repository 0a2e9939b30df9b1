#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ci {

enum class ErrorCode {
  kEncoding,
  kParse,
  kKeyFormat,
  kParameter,
  kSequencing,
  kRecency,
  kBadSignature,
  kUnknownCycle,
  kCapacity,
  kNotFound,
  kCorruption,
  kEvidenceRejected,
  kExpired,
  kRegistration,
  kNetwork,
  kIo,
  kRejected,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ci

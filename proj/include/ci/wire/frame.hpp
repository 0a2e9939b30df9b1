#pragma once

#include <optional>

#include "ci/common/bytes.hpp"

namespace ci::wire {

inline constexpr std::size_t kFrameHeaderSize = 4;
inline constexpr std::uint32_t kMaxFrameSize = 64u << 20;

/// 4-byte big-endian length prefix followed by one TLV message.
Bytes encode_frame(ByteView payload);

/// Incremental decoder for frames arriving over a byte stream.
class FrameDecoder {
 public:
  void feed(ByteView data);
  /// Next complete payload, or nullopt if more bytes are needed.
  /// Throws ErrorCode::kParse on an oversized frame.
  std::optional<Bytes> next();

 private:
  Bytes buffer_;
};

}  // namespace ci::wire

#include "ci/wire/frame.hpp"

#include "ci/common/error.hpp"

namespace ci::wire {

Bytes encode_frame(ByteView payload) {
  if (payload.size() > kMaxFrameSize) throw Error(ErrorCode::kEncoding, "frame too large");
  Bytes out;
  out.reserve(kFrameHeaderSize + payload.size());
  append_u32_be(out, static_cast<std::uint32_t>(payload.size()));
  append(out, payload);
  return out;
}

void FrameDecoder::feed(ByteView data) { append(buffer_, data); }

std::optional<Bytes> FrameDecoder::next() {
  if (buffer_.size() < kFrameHeaderSize) return std::nullopt;
  const std::uint32_t len = load_u32_be(buffer_);
  if (len > kMaxFrameSize) throw Error(ErrorCode::kParse, "frame exceeds maximum size");
  if (buffer_.size() - kFrameHeaderSize < len) return std::nullopt;
  Bytes payload(buffer_.begin() + kFrameHeaderSize, buffer_.begin() + kFrameHeaderSize + len);
  buffer_.erase(buffer_.begin(), buffer_.begin() + kFrameHeaderSize + len);
  return payload;
}

}  // namespace ci::wire

#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "ci/common/bytes.hpp"
#include "ci/wire/tags.hpp"

namespace ci::wire {

inline constexpr std::size_t kHeaderSize = 5;  // tag + 4-byte big-endian length
inline constexpr std::uint32_t kMaxValueSize = 256u << 20;

/// Accumulates the fields of one record in order.
class TlvWriter {
 public:
  TlvWriter& bytes(Tag tag, ByteView value);
  TlvWriter& str(Tag tag, std::string_view value);
  TlvWriter& u8(Tag tag, std::uint8_t value);
  TlvWriter& u64(Tag tag, std::uint64_t value);
  /// Appends an already-encoded TLV element verbatim.
  TlvWriter& raw(ByteView encoded_element);

  const Bytes& body() const { return body_; }
  /// Wraps the accumulated fields as a single record.
  Bytes finish(Tag record_tag) const;

 private:
  Bytes body_;
};

Bytes encode_element(Tag tag, ByteView value);

/// Strict sequential reader over a record body. Every accessor demands the
/// next element carry the expected tag, which keeps decoding injective.
class TlvReader {
 public:
  explicit TlvReader(ByteView body) : data_(body) {}

  bool at_end() const { return pos_ == data_.size(); }
  Tag peek_tag() const;

  ByteView bytes(Tag tag);
  template <std::size_t N>
  std::array<std::uint8_t, N> fixed(Tag tag) {
    return to_array<N>(bytes(tag));
  }
  std::string str(Tag tag);
  std::uint8_t u8(Tag tag);
  std::uint64_t u64(Tag tag);
  /// Returns the complete encoded element (header included) of the next record.
  ByteView element(Tag tag);

  void expect_end() const;

 private:
  struct Element {
    Tag tag;
    ByteView value;
    ByteView whole;
  };
  Element next(Tag expected);

  ByteView data_;
  std::size_t pos_ = 0;
};

/// Validates that `encoded` is exactly one element with tag `tag` and returns its body.
ByteView open_record(ByteView encoded, Tag tag);

}  // namespace ci::wire

#include "ci/common/bytes.hpp"

#include <algorithm>

#include "ci/common/error.hpp"

namespace ci {

std::string to_hex(ByteView data) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(data.size() * 2);
  for (std::uint8_t b : data) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0x0f]);
  }
  return out;
}

namespace {

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

Bytes from_hex(std::string_view hex) {
  std::string cleaned;
  cleaned.reserve(hex.size());
  for (char c : hex) {
    if (c == ' ' || c == '\n' || c == '\r' || c == '\t') continue;
    cleaned.push_back(c);
  }
  if (cleaned.size() % 2 != 0) {
    throw Error(ErrorCode::kParse, "hex string has odd length");
  }
  Bytes out(cleaned.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const int hi = hex_value(cleaned[2 * i]);
    const int lo = hex_value(cleaned[2 * i + 1]);
    if (hi < 0 || lo < 0) throw Error(ErrorCode::kParse, "invalid hex digit");
    out[i] = static_cast<std::uint8_t>((hi << 4) | lo);
  }
  return out;
}

void append(Bytes& out, ByteView data) { out.insert(out.end(), data.begin(), data.end()); }

void append_u16_be(Bytes& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

void append_u32_be(Bytes& out, std::uint32_t v) {
  for (int shift = 24; shift >= 0; shift -= 8) out.push_back(static_cast<std::uint8_t>(v >> shift));
}

void append_u64_be(Bytes& out, std::uint64_t v) {
  for (int shift = 56; shift >= 0; shift -= 8) out.push_back(static_cast<std::uint8_t>(v >> shift));
}

std::uint32_t load_u32_be(ByteView in) {
  if (in.size() < 4) throw Error(ErrorCode::kParse, "truncated u32");
  return (std::uint32_t{in[0]} << 24) | (std::uint32_t{in[1]} << 16) | (std::uint32_t{in[2]} << 8) |
         std::uint32_t{in[3]};
}

std::uint64_t load_u64_be(ByteView in) {
  if (in.size() < 8) throw Error(ErrorCode::kParse, "truncated u64");
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < 8; ++i) v = (v << 8) | in[i];
  return v;
}

template <std::size_t N>
std::array<std::uint8_t, N> to_array(ByteView in) {
  if (in.size() != N) {
    throw Error(ErrorCode::kParse, "expected " + std::to_string(N) + " bytes, got " + std::to_string(in.size()));
  }
  std::array<std::uint8_t, N> out{};
  std::copy(in.begin(), in.end(), out.begin());
  return out;
}

template std::array<std::uint8_t, 28> to_array<28>(ByteView);
template std::array<std::uint8_t, 32> to_array<32>(ByteView);

bool constant_time_equal(ByteView a, ByteView b) {
  if (a.size() != b.size()) return false;
  std::uint8_t acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc |= static_cast<std::uint8_t>(a[i] ^ b[i]);
  return acc == 0;
}

}  // namespace ci

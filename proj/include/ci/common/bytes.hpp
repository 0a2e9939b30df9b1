#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ci {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;
using Digest = std::array<std::uint8_t, 32>;

inline ByteView as_bytes(std::string_view s) {
  return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

std::string to_hex(ByteView data);
Bytes from_hex(std::string_view hex);

void append(Bytes& out, ByteView data);
void append_u16_be(Bytes& out, std::uint16_t v);
void append_u32_be(Bytes& out, std::uint32_t v);
void append_u64_be(Bytes& out, std::uint64_t v);

std::uint32_t load_u32_be(ByteView in);
std::uint64_t load_u64_be(ByteView in);

template <std::size_t N>
std::array<std::uint8_t, N> to_array(ByteView in);

bool constant_time_equal(ByteView a, ByteView b);

/// Customer number assigned by the insurer at registration.
struct CustomerId {
  std::uint64_t value = 0;
  auto operator<=>(const CustomerId&) const = default;
};

/// 256-bit random identifier of one update cycle.
struct CycleId {
  std::array<std::uint8_t, 32> bytes{};
  auto operator<=>(const CycleId&) const = default;
  std::string hex() const { return to_hex(bytes); }
};

}  // namespace ci

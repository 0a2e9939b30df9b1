#include "ci/crypto/group.hpp"

#include "ci/common/error.hpp"
#include "ci/wire/tlv.hpp"

namespace ci::crypto {

using wire::Tag;

namespace {

constexpr std::string_view kRfc5114P =
    "87A8E61DB4B6663CFFBBD19C651959998CEEF608660DD0F25D2CEED4435E3B00E00DF8F1D61957D4FAF7DF4561B2AA30"
    "16C3D91134096FAA3BF4296D830E9A7C209E0C6497517ABD5A8A9D306BCF67ED91F9E6725B4758C022E0B1EF4275BF7B"
    "6C5BFC11D45F9088B941F54EB1E59BB8BC39A0BF12307F5C4FDB70C581B23F76B63ACAE1CAA6B7902D52526735488A0E"
    "F13C6D9A51BFA4AB3AD8347796524D8EF6A167B5A41825D967E144E5140564251CCACB83E6B486F6B3CA3F7971506026"
    "C0B857F689962856DED4010ABD0BE621C3A3960A54E710C375F26375D7014103A4B54330C198AF126116D2276E11715F"
    "693877FAD7EF09CADB094AE91E1A1597";
constexpr std::string_view kRfc5114Q = "8CF83642A709A097B447997640129DA299B1A47D1EB3750BA308B0FE64F5FBD3";
constexpr std::string_view kRfc5114G =
    "3FB32C9B73134D0B2E77506660EDBD484CA7B18F21EF205407F4793A1A0BA12510DBC15077BE463FFF4FED4AAC0BB555"
    "BE3A6C1B0C6B47B1BC3773BF7E8C6F62901228F8C28CBB18A55AE31341000A650196F931C77A57F2DDF463E5E9EC144B"
    "777DE62AAAB8A8628AC376D282D6ED3864E67982428EBC831D14348F6F2F9193B5045AF2767164E1DFC967C1FB3F2E55"
    "A4BD1BFFE83B9C80D052B985D182EA0ADB2A3B7313D3FE14C8484B1E052588B9B7D2BBD2DF016199ECD06E1557CD0915"
    "B3353BBB64E0EC377FD028370DF92B52C7891428CDC67EB6184B523D1DB246C32F63078490F00EF8D647D148D4795451"
    "5E2327CFEF98C582664B4C0F6CC41659";

}  // namespace

Bytes GroupParams::encode() const {
  return wire::TlvWriter()
      .bytes(Tag::kGroupP, p.to_bytes_minimal())
      .bytes(Tag::kGroupQ, q.to_bytes_minimal())
      .bytes(Tag::kGroupG, g.to_bytes_minimal())
      .finish(Tag::kGroupParams);
}

GroupParams GroupParams::decode(ByteView encoded) {
  wire::TlvReader r(wire::open_record(encoded, Tag::kGroupParams));
  GroupParams out{BigNum::from_bytes(r.bytes(Tag::kGroupP)), BigNum::from_bytes(r.bytes(Tag::kGroupQ)),
                  BigNum::from_bytes(r.bytes(Tag::kGroupG))};
  r.expect_end();
  return out;
}

const GroupParams& production_group() {
  static const GroupParams group{BigNum::from_hex(kRfc5114P), BigNum::from_hex(kRfc5114Q),
                                 BigNum::from_hex(kRfc5114G)};
  return group;
}

void validate_group(const GroupParams& params) {
  const BigNum one(1);
  if (params.p <= BigNum(3) || !is_probable_prime(params.p)) throw Error(ErrorCode::kParameter, "p is not prime");
  if (params.q <= one || !is_probable_prime(params.q)) throw Error(ErrorCode::kParameter, "q is not prime");
  if (!divides(params.q, sub(params.p, one))) throw Error(ErrorCode::kParameter, "q does not divide p-1");
  if (params.g <= one || params.g >= params.p) throw Error(ErrorCode::kParameter, "generator out of range");
  if (!mod_exp(params.g, params.q, params.p).is_one()) {
    throw Error(ErrorCode::kParameter, "generator does not have order q");
  }
}

bool is_subgroup_element(const GroupParams& params, const BigNum& value) {
  if (value <= BigNum(1) || value >= params.p) return false;
  return mod_exp(value, params.q, params.p).is_one();
}

}  // namespace ci::crypto

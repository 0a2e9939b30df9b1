#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

#include "ci/common/bytes.hpp"

typedef struct bignum_st BIGNUM;

namespace ci::crypto {

class Rng;

/// Owning value-semantic wrapper over an OpenSSL BIGNUM (non-negative values only).
class BigNum {
 public:
  BigNum();
  explicit BigNum(std::uint64_t value);
  BigNum(const BigNum& other);
  BigNum(BigNum&&) noexcept = default;
  BigNum& operator=(const BigNum& other);
  BigNum& operator=(BigNum&&) noexcept = default;
  ~BigNum() = default;

  static BigNum from_bytes(ByteView big_endian);
  static BigNum from_hex(std::string_view hex);

  /// Big-endian, left-padded to exactly `width` bytes; throws if it does not fit.
  Bytes to_bytes(std::size_t width) const;
  Bytes to_bytes_minimal() const;
  std::string to_hex() const;

  std::size_t num_bits() const;
  std::size_t num_bytes() const;
  bool is_zero() const;
  bool is_one() const;
  std::uint64_t to_u64() const;

  friend bool operator==(const BigNum& a, const BigNum& b);
  friend std::strong_ordering operator<=>(const BigNum& a, const BigNum& b);

  const BIGNUM* get() const { return bn_.get(); }
  BIGNUM* get() { return bn_.get(); }

 private:
  struct Deleter {
    void operator()(BIGNUM* bn) const;
  };
  std::unique_ptr<BIGNUM, Deleter> bn_;
};

BigNum mod_reduce(const BigNum& a, const BigNum& m);
BigNum mod_add(const BigNum& a, const BigNum& b, const BigNum& m);
BigNum mod_sub(const BigNum& a, const BigNum& b, const BigNum& m);
BigNum mod_mul(const BigNum& a, const BigNum& b, const BigNum& m);
/// Throws ErrorCode::kKeyFormat when `a` has no inverse.
BigNum mod_inverse(const BigNum& a, const BigNum& m);
BigNum mod_exp(const BigNum& base, const BigNum& exp, const BigNum& m);
/// Constant-time exponentiation for secret exponents.
BigNum mod_exp_secret(const BigNum& base, const BigNum& secret_exp, const BigNum& m);
/// base1^exp1 * base2^exp2 mod m in one simultaneous exponentiation.
BigNum mod_exp2(const BigNum& base1, const BigNum& exp1, const BigNum& base2, const BigNum& exp2,
                const BigNum& m);
BigNum sub(const BigNum& a, const BigNum& b);
bool divides(const BigNum& d, const BigNum& n);
bool is_probable_prime(const BigNum& n);
/// Uniform value in [0, bound) drawn from `rng` by rejection sampling.
BigNum random_below(Rng& rng, const BigNum& bound);

}  // namespace ci::crypto

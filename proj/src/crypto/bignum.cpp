#include "ci/crypto/bignum.hpp"

#include <openssl/bn.h>

#include "ci/common/error.hpp"
#include "ci/crypto/random.hpp"

namespace ci::crypto {
namespace {

struct CtxDeleter {
  void operator()(BN_CTX* ctx) const { BN_CTX_free(ctx); }
};

BN_CTX* ctx() {
  thread_local std::unique_ptr<BN_CTX, CtxDeleter> c(BN_CTX_new());
  if (!c) throw Error(ErrorCode::kParameter, "BN_CTX_new failed");
  return c.get();
}

void check(int ok, const char* what) {
  if (ok != 1) throw Error(ErrorCode::kParameter, std::string("bignum operation failed: ") + what);
}

}  // namespace

void BigNum::Deleter::operator()(BIGNUM* bn) const { BN_clear_free(bn); }

BigNum::BigNum() : bn_(BN_new()) {
  if (!bn_) throw Error(ErrorCode::kParameter, "BN_new failed");
}

BigNum::BigNum(std::uint64_t value) : BigNum() {
  Bytes be;
  append_u64_be(be, value);
  BN_bin2bn(be.data(), static_cast<int>(be.size()), bn_.get());
}

BigNum::BigNum(const BigNum& other) : bn_(BN_dup(other.get())) {
  if (!bn_) throw Error(ErrorCode::kParameter, "BN_dup failed");
}

BigNum& BigNum::operator=(const BigNum& other) {
  if (this != &other) {
    BigNum copy(other);
    *this = std::move(copy);
  }
  return *this;
}

BigNum BigNum::from_bytes(ByteView big_endian) {
  BigNum out;
  if (!BN_bin2bn(big_endian.data(), static_cast<int>(big_endian.size()), out.get())) {
    throw Error(ErrorCode::kParse, "BN_bin2bn failed");
  }
  return out;
}

BigNum BigNum::from_hex(std::string_view hex) { return from_bytes(ci::from_hex(hex.size() % 2 ? "0" + std::string(hex) : std::string(hex))); }

Bytes BigNum::to_bytes(std::size_t width) const {
  if (num_bytes() > width) {
    throw Error(ErrorCode::kEncoding, "integer does not fit in " + std::to_string(width) + " bytes");
  }
  Bytes out(width);
  if (width > 0 && BN_bn2binpad(get(), out.data(), static_cast<int>(width)) < 0) {
    throw Error(ErrorCode::kEncoding, "BN_bn2binpad failed");
  }
  return out;
}

Bytes BigNum::to_bytes_minimal() const {
  if (is_zero()) return Bytes{0};
  Bytes out(num_bytes());
  BN_bn2bin(get(), out.data());
  return out;
}

std::string BigNum::to_hex() const { return ci::to_hex(to_bytes_minimal()); }

std::size_t BigNum::num_bits() const { return static_cast<std::size_t>(BN_num_bits(get())); }
std::size_t BigNum::num_bytes() const { return static_cast<std::size_t>(BN_num_bytes(get())); }
bool BigNum::is_zero() const { return BN_is_zero(get()); }
bool BigNum::is_one() const { return BN_is_one(get()); }

std::uint64_t BigNum::to_u64() const {
  if (num_bytes() > 8) throw Error(ErrorCode::kParameter, "integer exceeds 64 bits");
  return load_u64_be(to_bytes(8));
}

bool operator==(const BigNum& a, const BigNum& b) { return BN_cmp(a.get(), b.get()) == 0; }

std::strong_ordering operator<=>(const BigNum& a, const BigNum& b) {
  const int c = BN_cmp(a.get(), b.get());
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

BigNum mod_reduce(const BigNum& a, const BigNum& m) {
  BigNum r;
  check(BN_nnmod(r.get(), a.get(), m.get(), ctx()), "nnmod");
  return r;
}

BigNum mod_add(const BigNum& a, const BigNum& b, const BigNum& m) {
  BigNum r;
  check(BN_mod_add(r.get(), a.get(), b.get(), m.get(), ctx()), "mod_add");
  return r;
}

BigNum mod_sub(const BigNum& a, const BigNum& b, const BigNum& m) {
  BigNum r;
  check(BN_mod_sub(r.get(), a.get(), b.get(), m.get(), ctx()), "mod_sub");
  return r;
}

BigNum mod_mul(const BigNum& a, const BigNum& b, const BigNum& m) {
  BigNum r;
  check(BN_mod_mul(r.get(), a.get(), b.get(), m.get(), ctx()), "mod_mul");
  return r;
}

BigNum mod_inverse(const BigNum& a, const BigNum& m) {
  BigNum r;
  if (!BN_mod_inverse(r.get(), a.get(), m.get(), ctx())) {
    throw Error(ErrorCode::kKeyFormat, "value is not invertible");
  }
  return r;
}

BigNum mod_exp(const BigNum& base, const BigNum& exp, const BigNum& m) {
  BigNum r;
  check(BN_mod_exp(r.get(), base.get(), exp.get(), m.get(), ctx()), "mod_exp");
  return r;
}

BigNum mod_exp_secret(const BigNum& base, const BigNum& secret_exp, const BigNum& m) {
  BigNum r;
  BigNum e(secret_exp);
  BN_set_flags(e.get(), BN_FLG_CONSTTIME);
  check(BN_mod_exp_mont_consttime(r.get(), base.get(), e.get(), m.get(), ctx(), nullptr), "mod_exp_consttime");
  return r;
}

BigNum mod_exp2(const BigNum& base1, const BigNum& exp1, const BigNum& base2, const BigNum& exp2,
                const BigNum& m) {
  BigNum r;
  if (BN_is_odd(m.get())) {
    check(BN_mod_exp2_mont(r.get(), base1.get(), exp1.get(), base2.get(), exp2.get(), m.get(), ctx(), nullptr),
          "mod_exp2");
    return r;
  }
  return mod_mul(mod_exp(base1, exp1, m), mod_exp(base2, exp2, m), m);
}

BigNum sub(const BigNum& a, const BigNum& b) {
  BigNum r;
  check(BN_sub(r.get(), a.get(), b.get()), "sub");
  if (BN_is_negative(r.get())) throw Error(ErrorCode::kParameter, "negative result");
  return r;
}

bool divides(const BigNum& d, const BigNum& n) {
  BigNum rem;
  check(BN_mod(rem.get(), n.get(), d.get(), ctx()), "mod");
  return rem.is_zero();
}

bool is_probable_prime(const BigNum& n) {
  const int r = BN_check_prime(n.get(), ctx(), nullptr);
  if (r < 0) throw Error(ErrorCode::kParameter, "primality test failed");
  return r == 1;
}

BigNum random_below(Rng& rng, const BigNum& bound) {
  if (bound.is_zero()) throw Error(ErrorCode::kParameter, "random bound must be nonzero");
  const std::size_t bits = bound.num_bits();
  const std::size_t nbytes = (bits + 7) / 8;
  const unsigned excess = static_cast<unsigned>(nbytes * 8 - bits);
  for (;;) {
    Bytes raw = rng.bytes(nbytes);
    raw[0] &= static_cast<std::uint8_t>(0xff >> excess);
    BigNum candidate = BigNum::from_bytes(raw);
    if (candidate < bound) return candidate;
  }
}

}  // namespace ci::crypto

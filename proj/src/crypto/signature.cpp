#include "ci/crypto/signature.hpp"

#include <openssl/evp.h>

#include <memory>

#include "ci/common/error.hpp"
#include "ci/crypto/random.hpp"
#include "ci/wire/tlv.hpp"

namespace ci::crypto {

using wire::Tag;

namespace {

constexpr std::size_t kEd25519KeySize = 32;
constexpr std::size_t kEd25519SigSize = 64;

struct PkeyDeleter {
  void operator()(EVP_PKEY* k) const { EVP_PKEY_free(k); }
};
struct MdCtxDeleter {
  void operator()(EVP_MD_CTX* c) const { EVP_MD_CTX_free(c); }
};
using PkeyPtr = std::unique_ptr<EVP_PKEY, PkeyDeleter>;
using MdCtxPtr = std::unique_ptr<EVP_MD_CTX, MdCtxDeleter>;

SchemeId scheme_from_byte(std::uint8_t b) {
  if (b != static_cast<std::uint8_t>(SchemeId::kEd25519)) {
    throw Error(ErrorCode::kKeyFormat, "unknown signature scheme id " + std::to_string(b));
  }
  return SchemeId::kEd25519;
}

}  // namespace

Bytes SigPublicKey::encode() const {
  return wire::TlvWriter()
      .u8(Tag::kSchemeId, static_cast<std::uint8_t>(scheme))
      .bytes(Tag::kPublicKey, key)
      .finish(Tag::kSigPublicKey);
}

SigPublicKey SigPublicKey::decode(ByteView encoded) {
  wire::TlvReader r(wire::open_record(encoded, Tag::kSigPublicKey));
  SigPublicKey out;
  out.scheme = scheme_from_byte(r.u8(Tag::kSchemeId));
  const ByteView k = r.bytes(Tag::kPublicKey);
  out.key.assign(k.begin(), k.end());
  r.expect_end();
  return out;
}

Bytes SigKeyPair::encode() const {
  return wire::TlvWriter()
      .u8(Tag::kSchemeId, static_cast<std::uint8_t>(scheme))
      .bytes(Tag::kPublicKey, public_key)
      .bytes(Tag::kSecretKey, secret_key)
      .finish(Tag::kSigKeyPair);
}

SigKeyPair SigKeyPair::decode(ByteView encoded) {
  wire::TlvReader r(wire::open_record(encoded, Tag::kSigKeyPair));
  SigKeyPair out;
  out.scheme = scheme_from_byte(r.u8(Tag::kSchemeId));
  const ByteView pk = r.bytes(Tag::kPublicKey);
  const ByteView sk = r.bytes(Tag::kSecretKey);
  out.public_key.assign(pk.begin(), pk.end());
  out.secret_key.assign(sk.begin(), sk.end());
  r.expect_end();
  return out;
}

SigKeyPair generate_sig_keypair(Rng& rng) {
  SigKeyPair kp;
  kp.secret_key = rng.bytes(kEd25519KeySize);
  PkeyPtr pkey(EVP_PKEY_new_raw_private_key(EVP_PKEY_ED25519, nullptr, kp.secret_key.data(), kp.secret_key.size()));
  if (!pkey) throw Error(ErrorCode::kKeyFormat, "Ed25519 key generation failed");
  std::size_t len = kEd25519KeySize;
  kp.public_key.resize(len);
  if (EVP_PKEY_get_raw_public_key(pkey.get(), kp.public_key.data(), &len) != 1) {
    throw Error(ErrorCode::kKeyFormat, "Ed25519 public key extraction failed");
  }
  return kp;
}

Bytes sign(const SigKeyPair& key, ByteView message) {
  if (key.scheme != SchemeId::kEd25519 || key.secret_key.size() != kEd25519KeySize) {
    throw Error(ErrorCode::kKeyFormat, "malformed Ed25519 secret key");
  }
  PkeyPtr pkey(EVP_PKEY_new_raw_private_key(EVP_PKEY_ED25519, nullptr, key.secret_key.data(), key.secret_key.size()));
  MdCtxPtr ctx(EVP_MD_CTX_new());
  if (!pkey || !ctx || EVP_DigestSignInit(ctx.get(), nullptr, nullptr, nullptr, pkey.get()) != 1) {
    throw Error(ErrorCode::kKeyFormat, "Ed25519 sign init failed");
  }
  Bytes sig(kEd25519SigSize);
  std::size_t len = sig.size();
  if (EVP_DigestSign(ctx.get(), sig.data(), &len, message.data(), message.size()) != 1) {
    throw Error(ErrorCode::kKeyFormat, "Ed25519 signing failed");
  }
  sig.resize(len);
  return sig;
}

bool verify(const SigPublicKey& key, ByteView message, ByteView signature) {
  if (key.scheme != SchemeId::kEd25519 || key.key.size() != kEd25519KeySize ||
      signature.size() != kEd25519SigSize) {
    return false;
  }
  PkeyPtr pkey(EVP_PKEY_new_raw_public_key(EVP_PKEY_ED25519, nullptr, key.key.data(), key.key.size()));
  MdCtxPtr ctx(EVP_MD_CTX_new());
  if (!pkey || !ctx || EVP_DigestVerifyInit(ctx.get(), nullptr, nullptr, nullptr, pkey.get()) != 1) return false;
  return EVP_DigestVerify(ctx.get(), signature.data(), signature.size(), message.data(), message.size()) == 1;
}

}  // namespace ci::crypto

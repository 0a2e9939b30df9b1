#include "ci/crypto/chameleon.hpp"

#include "ci/common/error.hpp"
#include "ci/crypto/hash.hpp"
#include "ci/crypto/random.hpp"
#include "ci/wire/tlv.hpp"

namespace ci::crypto {

using wire::Tag;

Bytes ChameleonPublicKey::encode() const {
  return wire::TlvWriter()
      .raw(params.encode())
      .bytes(Tag::kElement, y.to_bytes(params.element_size()))
      .finish(Tag::kChameleonPublicKey);
}

ChameleonPublicKey ChameleonPublicKey::decode(ByteView encoded) {
  wire::TlvReader r(wire::open_record(encoded, Tag::kChameleonPublicKey));
  ChameleonPublicKey out{GroupParams::decode(r.element(Tag::kGroupParams)), BigNum()};
  out.y = BigNum::from_bytes(r.bytes(Tag::kElement));
  r.expect_end();
  return out;
}

ChameleonKeyPair ChameleonKeyPair::generate(const GroupParams& params, Rng& rng) {
  BigNum x;
  do {
    x = random_below(rng, params.q);
  } while (x.is_zero());
  return from_trapdoor(params, x);
}

ChameleonKeyPair ChameleonKeyPair::from_trapdoor(const GroupParams& params, const BigNum& trapdoor) {
  if (trapdoor.is_zero() || trapdoor >= params.q) throw Error(ErrorCode::kKeyFormat, "trapdoor out of range");
  return {{params, mod_exp_secret(params.g, trapdoor, params.p)}, trapdoor};
}

Bytes ChameleonKeyPair::encode() const {
  return wire::TlvWriter()
      .raw(public_key.encode())
      .bytes(Tag::kScalar, trapdoor.to_bytes(public_key.params.scalar_size()))
      .finish(Tag::kChameleonKeyPair);
}

ChameleonKeyPair ChameleonKeyPair::decode(ByteView encoded) {
  wire::TlvReader r(wire::open_record(encoded, Tag::kChameleonKeyPair));
  ChameleonKeyPair out{ChameleonPublicKey::decode(r.element(Tag::kChameleonPublicKey)), BigNum()};
  out.trapdoor = BigNum::from_bytes(r.bytes(Tag::kScalar));
  r.expect_end();
  if (mod_exp(out.public_key.params.g, out.trapdoor, out.public_key.params.p) != out.public_key.y) {
    throw Error(ErrorCode::kKeyFormat, "trapdoor does not match public key");
  }
  return out;
}

BigNum message_exponent(const GroupParams& params, ByteView message) {
  const Digest d = hash_h(message);
  return mod_reduce(BigNum::from_bytes(d), params.q);
}

BigNum chameleon_hash_exponent(const ChameleonPublicKey& key, const BigNum& exponent, const BigNum& randomizer) {
  if (randomizer >= key.params.q) throw Error(ErrorCode::kParameter, "chameleon randomizer out of range");
  return mod_exp2(key.params.g, exponent, key.y, randomizer, key.params.p);
}

BigNum chameleon_hash(const ChameleonPublicKey& key, ByteView message, const BigNum& randomizer) {
  return chameleon_hash_exponent(key, message_exponent(key.params, message), randomizer);
}

BigNum find_collision_exponent(const ChameleonKeyPair& key, const BigNum& exponent, const BigNum& randomizer,
                               const BigNum& target_exponent) {
  const BigNum& q = key.public_key.params.q;
  if (randomizer >= q) throw Error(ErrorCode::kParameter, "chameleon randomizer out of range");
  const BigNum x_inv = mod_inverse(key.trapdoor, q);
  const BigNum lhs = mod_add(mod_sub(exponent, target_exponent, q), mod_mul(key.trapdoor, randomizer, q), q);
  return mod_mul(lhs, x_inv, q);
}

BigNum find_collision(const ChameleonKeyPair& key, ByteView message, const BigNum& randomizer,
                      ByteView target_message) {
  const GroupParams& params = key.public_key.params;
  return find_collision_exponent(key, message_exponent(params, message), randomizer,
                                 message_exponent(params, target_message));
}

Bytes SignatureContext::encode() const {
  return wire::TlvWriter().u64(Tag::kCustomer, customer.value).str(Tag::kLabel, label).finish(Tag::kSigContext);
}

SignatureContext SignatureContext::decode(ByteView encoded) {
  wire::TlvReader r(wire::open_record(encoded, Tag::kSigContext));
  SignatureContext out;
  out.customer.value = r.u64(Tag::kCustomer);
  out.label = r.str(Tag::kLabel);
  r.expect_end();
  return out;
}

Bytes ChameleonSignature::encode(const GroupParams& params) const {
  return wire::TlvWriter()
      .bytes(Tag::kScalar, randomizer.to_bytes(params.scalar_size()))
      .bytes(Tag::kSignature, inner_signature)
      .raw(context.encode())
      .finish(Tag::kChameleonSignature);
}

ChameleonSignature ChameleonSignature::decode(ByteView encoded) {
  wire::TlvReader r(wire::open_record(encoded, Tag::kChameleonSignature));
  ChameleonSignature out;
  out.randomizer = BigNum::from_bytes(r.bytes(Tag::kScalar));
  const ByteView sig = r.bytes(Tag::kSignature);
  out.inner_signature.assign(sig.begin(), sig.end());
  out.context = SignatureContext::decode(r.element(Tag::kSigContext));
  r.expect_end();
  return out;
}

Digest chameleon_signed_digest(const GroupParams& params, const BigNum& chameleon_value,
                               const SignatureContext& context) {
  const Bytes input = wire::TlvWriter()
                          .bytes(Tag::kElement, chameleon_value.to_bytes(params.element_size()))
                          .raw(context.encode())
                          .finish(Tag::kChameleonDigestInput);
  return hash_h(input);
}

ChameleonSignature chameleon_sign(const SigKeyPair& signer, const ChameleonPublicKey& recipient, ByteView message,
                                  const SignatureContext& context, Rng& rng) {
  if (!is_subgroup_element(recipient.params, recipient.y)) {
    throw Error(ErrorCode::kKeyFormat, "recipient chameleon key is not a subgroup element");
  }
  ChameleonSignature out;
  out.randomizer = random_below(rng, recipient.params.q);
  out.context = context;
  const BigNum ch = chameleon_hash(recipient, message, out.randomizer);
  out.inner_signature = sign(signer, chameleon_signed_digest(recipient.params, ch, context));
  return out;
}

bool chameleon_verify(const SigPublicKey& signer, const ChameleonPublicKey& recipient, ByteView message,
                      const ChameleonSignature& signature, const SignatureContext& expected) {
  if (!(signature.context == expected)) return false;
  if (signature.randomizer >= recipient.params.q) return false;
  if (recipient.y <= BigNum(1) || recipient.y >= recipient.params.p) return false;
  const BigNum ch = chameleon_hash(recipient, message, signature.randomizer);
  return verify(signer, chameleon_signed_digest(recipient.params, ch, signature.context), signature.inner_signature);
}

ChameleonSignature forge_signature(const ChameleonKeyPair& key, ByteView original_message,
                                   const ChameleonSignature& original, ByteView new_message) {
  ChameleonSignature out = original;
  out.randomizer = find_collision(key, original_message, original.randomizer, new_message);
  return out;
}

}  // namespace ci::crypto

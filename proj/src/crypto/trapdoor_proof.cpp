#include "ci/crypto/trapdoor_proof.hpp"

#include "ci/crypto/hash.hpp"
#include "ci/crypto/random.hpp"
#include "ci/wire/tlv.hpp"

namespace ci::crypto {

using wire::Tag;

Bytes TrapdoorProof::encode(const GroupParams& params) const {
  return wire::TlvWriter()
      .bytes(Tag::kElement, commitment.to_bytes(params.element_size()))
      .bytes(Tag::kScalar, challenge.to_bytes(params.scalar_size()))
      .bytes(Tag::kScalar, response.to_bytes(params.scalar_size()))
      .finish(Tag::kTrapdoorProof);
}

TrapdoorProof TrapdoorProof::decode(ByteView encoded) {
  wire::TlvReader r(wire::open_record(encoded, Tag::kTrapdoorProof));
  TrapdoorProof out;
  out.commitment = BigNum::from_bytes(r.bytes(Tag::kElement));
  out.challenge = BigNum::from_bytes(r.bytes(Tag::kScalar));
  out.response = BigNum::from_bytes(r.bytes(Tag::kScalar));
  r.expect_end();
  return out;
}

BigNum trapdoor_challenge(const ChameleonPublicKey& key, const BigNum& commitment, ByteView context) {
  const GroupParams& params = key.params;
  const Bytes input = wire::TlvWriter()
                          .raw(key.encode())
                          .bytes(Tag::kElement, commitment.to_bytes(params.element_size()))
                          .bytes(Tag::kMessage, context)
                          .finish(Tag::kTrapdoorChallengeInput);
  return mod_reduce(BigNum::from_bytes(hash_h(input)), params.q);
}

BigNum trapdoor_response(const GroupParams& params, const BigNum& nonce, const BigNum& challenge,
                         const BigNum& trapdoor) {
  return mod_add(nonce, mod_mul(challenge, trapdoor, params.q), params.q);
}

bool trapdoor_equation_holds(const ChameleonPublicKey& key, const TrapdoorProof& proof) {
  const GroupParams& params = key.params;
  if (proof.challenge >= params.q || proof.response >= params.q) return false;
  if (!is_subgroup_element(params, proof.commitment) || !is_subgroup_element(params, key.y)) return false;
  const BigNum lhs = mod_exp(params.g, proof.response, params.p);
  const BigNum rhs = mod_mul(proof.commitment, mod_exp(key.y, proof.challenge, params.p), params.p);
  return lhs == rhs;
}

TrapdoorProof prove_trapdoor(const ChameleonKeyPair& key, ByteView context, Rng& rng) {
  const GroupParams& params = key.public_key.params;
  BigNum nonce;
  do {
    nonce = random_below(rng, params.q);
  } while (nonce.is_zero());
  TrapdoorProof proof;
  proof.commitment = mod_exp_secret(params.g, nonce, params.p);
  proof.challenge = trapdoor_challenge(key.public_key, proof.commitment, context);
  proof.response = trapdoor_response(params, nonce, proof.challenge, key.trapdoor);
  return proof;
}

bool verify_trapdoor(const ChameleonPublicKey& key, ByteView context, const TrapdoorProof& proof) {
  if (proof.commitment.is_zero() || proof.commitment >= key.params.p) return false;
  if (trapdoor_challenge(key, proof.commitment, context) != proof.challenge) return false;
  return trapdoor_equation_holds(key, proof);
}

}  // namespace ci::crypto

#pragma once

#include "ci/crypto/chameleon.hpp"

namespace ci::crypto {

/// Non-interactive Schnorr proof of knowledge of x with y = g^x, bound to a
/// caller-supplied context through the Fiat-Shamir challenge.
struct TrapdoorProof {
  BigNum commitment;  // u = g^k
  BigNum challenge;   // c = h(params, y, u, context) mod q
  BigNum response;    // z = k + c*x mod q

  Bytes encode(const GroupParams& params) const;
  static TrapdoorProof decode(ByteView encoded);
  friend bool operator==(const TrapdoorProof&, const TrapdoorProof&) = default;
};

TrapdoorProof prove_trapdoor(const ChameleonKeyPair& key, ByteView context, Rng& rng);
bool verify_trapdoor(const ChameleonPublicKey& key, ByteView context, const TrapdoorProof& proof);

BigNum trapdoor_challenge(const ChameleonPublicKey& key, const BigNum& commitment, ByteView context);
BigNum trapdoor_response(const GroupParams& params, const BigNum& nonce, const BigNum& challenge,
                         const BigNum& trapdoor);
/// g^z == u * y^c mod p, without recomputing the challenge.
bool trapdoor_equation_holds(const ChameleonPublicKey& key, const TrapdoorProof& proof);

}  // namespace ci::crypto

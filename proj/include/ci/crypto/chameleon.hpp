#pragma once

#include <string>

#include "ci/common/bytes.hpp"
#include "ci/crypto/group.hpp"
#include "ci/crypto/signature.hpp"

namespace ci::crypto {

class Rng;

/// Recipient-side chameleon hash key: CH(m, r) = g^{h(m) mod q} * y^r mod p.
struct ChameleonPublicKey {
  GroupParams params;
  BigNum y;

  Bytes encode() const;
  static ChameleonPublicKey decode(ByteView encoded);
  friend bool operator==(const ChameleonPublicKey&, const ChameleonPublicKey&) = default;
};

/// Holds the trapdoor x with y = g^x. Only the recipient (customer) keeps this.
struct ChameleonKeyPair {
  ChameleonPublicKey public_key;
  BigNum trapdoor;

  static ChameleonKeyPair generate(const GroupParams& params, Rng& rng);
  /// Builds a key pair from a known trapdoor in [1, q-1].
  static ChameleonKeyPair from_trapdoor(const GroupParams& params, const BigNum& trapdoor);

  Bytes encode() const;
  static ChameleonKeyPair decode(ByteView encoded);
};

/// h(message) interpreted big-endian, reduced mod q.
BigNum message_exponent(const GroupParams& params, ByteView message);

/// g^e * y^r mod p for an already reduced message exponent e.
BigNum chameleon_hash_exponent(const ChameleonPublicKey& key, const BigNum& exponent, const BigNum& randomizer);
/// Throws ErrorCode::kParameter unless randomizer is in [0, q-1].
BigNum chameleon_hash(const ChameleonPublicKey& key, ByteView message, const BigNum& randomizer);

/// r' = (e - e' + x*r) * x^{-1} mod q, so that CH(e', r') = CH(e, r).
BigNum find_collision_exponent(const ChameleonKeyPair& key, const BigNum& exponent, const BigNum& randomizer,
                               const BigNum& target_exponent);
BigNum find_collision(const ChameleonKeyPair& key, ByteView message, const BigNum& randomizer,
                      ByteView target_message);

/// Binds a chameleon signature to one recipient and one message kind.
struct SignatureContext {
  CustomerId customer;
  std::string label;

  Bytes encode() const;
  static SignatureContext decode(ByteView encoded);
  friend bool operator==(const SignatureContext&, const SignatureContext&) = default;
};

struct ChameleonSignature {
  BigNum randomizer;
  Bytes inner_signature;
  SignatureContext context;

  Bytes encode(const GroupParams& params) const;
  static ChameleonSignature decode(ByteView encoded);
  friend bool operator==(const ChameleonSignature&, const ChameleonSignature&) = default;
};

/// The byte string the inner standard signature covers: h(CH || context).
Digest chameleon_signed_digest(const GroupParams& params, const BigNum& chameleon_value,
                               const SignatureContext& context);

/// Throws ErrorCode::kKeyFormat when the recipient key is not a valid subgroup element.
ChameleonSignature chameleon_sign(const SigKeyPair& signer, const ChameleonPublicKey& recipient, ByteView message,
                                  const SignatureContext& context, Rng& rng);

/// Accepts iff the context equals `expected` and the inner signature verifies
/// over h(CH(message, r) || context).
bool chameleon_verify(const SigPublicKey& signer, const ChameleonPublicKey& recipient, ByteView message,
                      const ChameleonSignature& signature, const SignatureContext& expected);

/// Recipient-side forgery: re-targets an existing signature to `new_message`
/// by finding a collision with the trapdoor. The inner signature is reused.
ChameleonSignature forge_signature(const ChameleonKeyPair& key, ByteView original_message,
                                   const ChameleonSignature& original, ByteView new_message);

}  // namespace ci::crypto

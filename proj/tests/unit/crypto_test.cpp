#define OPENSSL_SUPPRESS_DEPRECATED
#include <gtest/gtest.h>
#include <openssl/bn.h>
#include <openssl/dh.h>

#include <set>

#include "ci/crypto/bignum.hpp"
#include "ci/crypto/chameleon.hpp"
#include "ci/crypto/group.hpp"
#include "ci/crypto/hash.hpp"
#include "ci/crypto/pki.hpp"
#include "ci/crypto/random.hpp"
#include "ci/crypto/signature.hpp"
#include "ci/crypto/trapdoor_proof.hpp"
#include "support.hpp"

namespace ci::crypto {
namespace {

using testing::code_of;
using testing::toy_group;

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1;
  b %= m;
  while (e) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return r;
}

TEST(Hash, DomainSeparatedPrefixes) {
  const Bytes m = {1, 2, 3};
  Bytes hm = {0x68};
  append(hm, m);
  EXPECT_EQ(hash_h(m), sha256(hm));
  Bytes Hm = {0x48};
  append(Hm, m);
  const Digest full = sha256(Hm);
  const Digest28 h28 = hash_H28(m);
  EXPECT_TRUE(std::equal(h28.begin(), h28.end(), full.begin()));
  EXPECT_EQ(hash_h({ByteView(m).first(1), ByteView(m).subspan(1)}), hash_h(m));
  Bytes km = {9, 9};
  append(km, m);
  EXPECT_EQ(prf(Bytes{9, 9}, m), hash_h(km));
}

TEST(Hash, KnownSha256Vector) {
  EXPECT_EQ(to_hex(sha256(as_bytes("abc"))), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(BigNum, ArithmeticAgainstMachineIntegers) {
  DeterministicRng rng(5);
  for (int i = 0; i < 200; ++i) {
    const std::uint64_t m = 1000003;
    const std::uint64_t a = rng.uniform(m), b = rng.uniform(m), e = rng.uniform(1u << 20);
    const BigNum A(a), B(b), M(m), E(e);
    EXPECT_EQ(mod_add(A, B, M).to_u64(), (a + b) % m);
    EXPECT_EQ(mod_sub(A, B, M).to_u64(), (a + m - b) % m);
    EXPECT_EQ(mod_mul(A, B, M).to_u64(), a * b % m);
    EXPECT_EQ(mod_exp(A, E, M).to_u64(), pow_mod(a, e, m));
    EXPECT_EQ(mod_exp_secret(A, E, M).to_u64(), pow_mod(a, e, m));
    EXPECT_EQ(mod_exp2(A, E, B, E, M).to_u64(), pow_mod(a, e, m) * pow_mod(b, e, m) % m);
    if (a != 0) EXPECT_EQ(mod_mul(mod_inverse(A, M), A, M).to_u64(), 1u);
  }
  EXPECT_EQ(code_of([] { mod_inverse(BigNum(6), BigNum(9)); }), ErrorCode::kKeyFormat);
}

TEST(BigNum, ByteEncodings) {
  const BigNum v = BigNum::from_hex("0102");
  EXPECT_EQ(to_hex(v.to_bytes(4)), "00000102");
  EXPECT_EQ(to_hex(v.to_bytes_minimal()), "0102");
  EXPECT_EQ(to_hex(BigNum(0).to_bytes_minimal()), "00");
  EXPECT_EQ(BigNum::from_bytes(v.to_bytes(8)), v);
  EXPECT_ANY_THROW(v.to_bytes(1));
}

TEST(BigNum, RandomBelowStaysInRange) {
  DeterministicRng rng(6);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 500; ++i) {
    const auto v = random_below(rng, BigNum(11)).to_u64();
    EXPECT_LT(v, 11u);
    seen.insert(v);
  }
  EXPECT_EQ(seen.size(), 11u);
}

TEST(Group, ProductionGroupIsValid) {
  const GroupParams& g = production_group();
  EXPECT_NO_THROW(validate_group(g));
  EXPECT_EQ(g.p.num_bits(), 2048u);
  EXPECT_EQ(g.q.num_bits(), 256u);
}

TEST(Group, ProductionGroupMatchesOpenSslRfc5114Constants) {
  DH* dh = DH_get_2048_256();
  ASSERT_NE(dh, nullptr);
  const BIGNUM *p = nullptr, *q = nullptr, *g = nullptr;
  DH_get0_pqg(dh, &p, &q, &g);
  EXPECT_EQ(BN_cmp(p, production_group().p.get()), 0);
  EXPECT_EQ(BN_cmp(q, production_group().q.get()), 0);
  EXPECT_EQ(BN_cmp(g, production_group().g.get()), 0);
  DH_free(dh);
}

TEST(Group, ValidationRejectsBadParameters) {
  EXPECT_NO_THROW(validate_group(toy_group()));
  EXPECT_EQ(code_of([] { validate_group({BigNum(23), BigNum(11), BigNum(5)}); }), ErrorCode::kParameter);
  EXPECT_EQ(code_of([] { validate_group({BigNum(23), BigNum(7), BigNum(4)}); }), ErrorCode::kParameter);
  EXPECT_EQ(code_of([] { validate_group({BigNum(24), BigNum(11), BigNum(4)}); }), ErrorCode::kParameter);
  EXPECT_TRUE(is_subgroup_element(toy_group(), BigNum(18)));
  EXPECT_FALSE(is_subgroup_element(toy_group(), BigNum(5)));
  EXPECT_FALSE(is_subgroup_element(toy_group(), BigNum(1)));
  EXPECT_EQ(GroupParams::decode(production_group().encode()), production_group());
}

Bytes message_with_exponent(std::uint64_t e) {
  for (std::uint32_t i = 0;; ++i) {
    Bytes m;
    append_u32_be(m, i);
    if (message_exponent(toy_group(), m).to_u64() == e) return m;
  }
}

TEST(ChameleonToy, HandVector) {
  const auto key = ChameleonKeyPair::from_trapdoor(toy_group(), BigNum(3));
  EXPECT_EQ(key.public_key.y.to_u64(), 18u);
  EXPECT_EQ(chameleon_hash_exponent(key.public_key, BigNum(5), BigNum(2)).to_u64(), 1u);
  const BigNum r2 = find_collision_exponent(key, BigNum(5), BigNum(2), BigNum(7));
  EXPECT_EQ(r2.to_u64(), 5u);
  EXPECT_EQ(chameleon_hash_exponent(key.public_key, BigNum(7), r2).to_u64(), 1u);
}

TEST(ChameleonToy, MessageLevelCollision) {
  const auto key = ChameleonKeyPair::from_trapdoor(toy_group(), BigNum(3));
  const Bytes m = message_with_exponent(5);
  const Bytes m2 = message_with_exponent(7);
  EXPECT_EQ(chameleon_hash(key.public_key, m, BigNum(2)).to_u64(), 1u);
  const BigNum r2 = find_collision(key, m, BigNum(2), m2);
  EXPECT_EQ(r2.to_u64(), 5u);
  EXPECT_EQ(chameleon_hash(key.public_key, m2, r2).to_u64(), 1u);
  EXPECT_EQ(code_of([&] { chameleon_hash(key.public_key, m, BigNum(11)); }), ErrorCode::kParameter);
}

// Oracle: exhaustive machine-integer evaluation of g^e y^r and the collision formula.
TEST(ChameleonToy, ExhaustiveAgainstIntegerOracle) {
  for (std::uint64_t x = 1; x < 11; ++x) {
    const auto key = ChameleonKeyPair::from_trapdoor(toy_group(), BigNum(x));
    const std::uint64_t y = pow_mod(4, x, 23);
    ASSERT_EQ(key.public_key.y.to_u64(), y);
    for (std::uint64_t e = 0; e < 11; ++e) {
      for (std::uint64_t r = 0; r < 11; ++r) {
        const std::uint64_t ch = pow_mod(4, e, 23) * pow_mod(y, r, 23) % 23;
        ASSERT_EQ(chameleon_hash_exponent(key.public_key, BigNum(e), BigNum(r)).to_u64(), ch);
        for (std::uint64_t e2 = 0; e2 < 11; ++e2) {
          const std::uint64_t r2 = find_collision_exponent(key, BigNum(e), BigNum(r), BigNum(e2)).to_u64();
          ASSERT_LT(r2, 11u);
          ASSERT_EQ(pow_mod(4, e2, 23) * pow_mod(y, r2, 23) % 23, ch);
        }
      }
    }
  }
}

struct Parties {
  DeterministicRng rng{77};
  SigKeyPair signer = generate_sig_keypair(rng);
  ChameleonKeyPair recipient = ChameleonKeyPair::generate(production_group(), rng);
  SignatureContext ctx{CustomerId{4}, "Certificates"};
};

TEST(Signature, Ed25519SignVerify) {
  DeterministicRng rng(1);
  const auto kp = generate_sig_keypair(rng);
  EXPECT_EQ(kp.public_key.size(), 32u);
  Bytes sig = sign(kp, as_bytes("hello"));
  EXPECT_TRUE(verify(kp.public_part(), as_bytes("hello"), sig));
  EXPECT_FALSE(verify(kp.public_part(), as_bytes("hellO"), sig));
  sig[10] ^= 1;
  EXPECT_FALSE(verify(kp.public_part(), as_bytes("hello"), sig));
  EXPECT_FALSE(verify({SchemeId::kEd25519, Bytes(5, 1)}, as_bytes("hello"), sig));
  EXPECT_EQ(SigKeyPair::decode(kp.encode()).public_key, kp.public_key);
  EXPECT_EQ(SigPublicKey::decode(kp.public_part().encode()), kp.public_part());
}

TEST(ChameleonSignature, SignVerifyAndBindings) {
  Parties p;
  const Bytes msg = {1, 2, 3, 4};
  const auto sig = chameleon_sign(p.signer, p.recipient.public_key, msg, p.ctx, p.rng);
  EXPECT_TRUE(chameleon_verify(p.signer.public_part(), p.recipient.public_key, msg, sig, p.ctx));
  EXPECT_FALSE(chameleon_verify(p.signer.public_part(), p.recipient.public_key, Bytes{1, 2, 3, 5}, sig, p.ctx));
  EXPECT_FALSE(chameleon_verify(p.signer.public_part(), p.recipient.public_key, msg, sig,
                                SignatureContext{CustomerId{5}, "Certificates"}));
  EXPECT_FALSE(chameleon_verify(p.signer.public_part(), p.recipient.public_key, msg, sig,
                                SignatureContext{CustomerId{4}, "Vouchers"}));
  const auto other = ChameleonKeyPair::generate(production_group(), p.rng);
  EXPECT_FALSE(chameleon_verify(p.signer.public_part(), other.public_key, msg, sig, p.ctx));
  auto bad = sig;
  bad.randomizer = mod_add(bad.randomizer, BigNum(1), production_group().q);
  EXPECT_FALSE(chameleon_verify(p.signer.public_part(), p.recipient.public_key, msg, bad, p.ctx));
  EXPECT_EQ(ChameleonSignature::decode(sig.encode(production_group())), sig);
}

TEST(ChameleonSignature, RecipientForgeryVerifies) {
  Parties p;
  const Bytes msg = {0x6f, 0x72, 0x69, 0x67};
  const auto sig = chameleon_sign(p.signer, p.recipient.public_key, msg, p.ctx, p.rng);
  const Bytes forged_msg = {0xde, 0xad};
  const auto forged = forge_signature(p.recipient, msg, sig, forged_msg);
  EXPECT_EQ(forged.inner_signature, sig.inner_signature);
  EXPECT_NE(forged.randomizer, sig.randomizer);
  EXPECT_TRUE(chameleon_verify(p.signer.public_part(), p.recipient.public_key, forged_msg, forged, p.ctx));
  EXPECT_EQ(chameleon_hash(p.recipient.public_key, msg, sig.randomizer),
            chameleon_hash(p.recipient.public_key, forged_msg, forged.randomizer));
}

TEST(ChameleonSignature, RejectsRecipientKeyOutsideSubgroup) {
  Parties p;
  ChameleonPublicKey bad{production_group(), BigNum(1)};
  EXPECT_EQ(code_of([&] { chameleon_sign(p.signer, bad, Bytes{1}, p.ctx, p.rng); }), ErrorCode::kKeyFormat);
}

TEST(TrapdoorProof, ProveVerifyAndContextBinding) {
  Parties p;
  const Bytes ctx = {7, 7, 7};
  const auto proof = prove_trapdoor(p.recipient, ctx, p.rng);
  EXPECT_TRUE(verify_trapdoor(p.recipient.public_key, ctx, proof));
  EXPECT_TRUE(trapdoor_equation_holds(p.recipient.public_key, proof));
  EXPECT_FALSE(verify_trapdoor(p.recipient.public_key, Bytes{7, 7}, proof));
  auto bad = proof;
  bad.response = mod_add(bad.response, BigNum(1), production_group().q);
  EXPECT_FALSE(verify_trapdoor(p.recipient.public_key, ctx, bad));
  const auto other = ChameleonKeyPair::generate(production_group(), p.rng);
  EXPECT_FALSE(verify_trapdoor(other.public_key, ctx, proof));
  EXPECT_EQ(TrapdoorProof::decode(proof.encode(production_group())), proof);
}

TEST(TrapdoorProof, ToyGroupEquation) {
  DeterministicRng rng(3);
  const auto key = ChameleonKeyPair::from_trapdoor(toy_group(), BigNum(3));
  for (int i = 0; i < 50; ++i) {
    const auto proof = prove_trapdoor(key, Bytes{static_cast<std::uint8_t>(i)}, rng);
    const std::uint64_t lhs = pow_mod(4, proof.response.to_u64(), 23);
    const std::uint64_t rhs = proof.commitment.to_u64() * pow_mod(18, proof.challenge.to_u64(), 23) % 23;
    EXPECT_EQ(lhs, rhs);
    EXPECT_TRUE(verify_trapdoor(key.public_key, Bytes{static_cast<std::uint8_t>(i)}, proof));
  }
}

class PkiTest : public ::testing::TestWithParam<ServerKeyType> {};

TEST_P(PkiTest, IssueParseAndVerify) {
  DeterministicRng rng(9);
  const auto ca = PrivateKey::generate(ServerKeyType::kEd25519, rng);
  const auto subject = PrivateKey::generate(GetParam(), rng);
  CertificateTemplate t;
  t.subject_cn = "Bank.Example";
  t.dns_names = {"bank.example", "www.bank.example"};
  t.not_before = 1'700'000'000;
  t.not_after = t.not_before + 90 * 86400;
  const Bytes der = issue_certificate(t, subject, ca);
  EXPECT_EQ(certificate_identities(der), (std::vector<std::string>{"bank.example", "www.bank.example"}));
  EXPECT_TRUE(certificate_matches_domain(der, "BANK.example"));
  EXPECT_TRUE(certificate_matches_domain(der, "www.bank.example"));
  EXPECT_FALSE(certificate_matches_domain(der, "evil.example"));
  EXPECT_FALSE(certificate_matches_domain(der, "x.bank.example"));

  const Bytes msg = {5, 6, 7};
  const Bytes sig = subject.sign(msg);
  const auto alg = subject.signature_algorithm();
  EXPECT_EQ(alg, GetParam() == ServerKeyType::kEd25519 ? kSigAlgEd25519 : kSigAlgRsaPkcs1Sha256);
  EXPECT_TRUE(verify_with_certificate(der, alg, msg, sig));
  EXPECT_FALSE(verify_with_certificate(der, alg, Bytes{5, 6, 8}, sig));
  const auto wrong = alg == kSigAlgEd25519 ? kSigAlgRsaPkcs1Sha256 : kSigAlgEd25519;
  EXPECT_FALSE(verify_with_certificate(der, wrong, msg, sig));
  EXPECT_FALSE(verify_with_certificate(Bytes{1, 2, 3}, alg, msg, sig));
  EXPECT_EQ(PrivateKey::from_der(subject.to_der()).public_key_der(), subject.public_key_der());
}

TEST_P(PkiTest, CommonNameFallbackWithoutSan) {
  DeterministicRng rng(10);
  const auto ca = PrivateKey::generate(ServerKeyType::kEd25519, rng);
  const auto subject = PrivateKey::generate(GetParam(), rng);
  CertificateTemplate t;
  t.subject_cn = "only.example";
  t.not_after = 1000;
  const Bytes der = issue_certificate(t, subject, ca);
  EXPECT_TRUE(certificate_matches_domain(der, "only.example"));
}

INSTANTIATE_TEST_SUITE_P(KeyTypes, PkiTest, ::testing::Values(ServerKeyType::kEd25519, ServerKeyType::kRsa2048));

TEST(Pki, MalformedCertificateIsParseError) {
  EXPECT_EQ(code_of([] { certificate_identities(Bytes{0x30, 0x01}); }), ErrorCode::kParse);
}

}  // namespace
}  // namespace ci::crypto

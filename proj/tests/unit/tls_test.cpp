#include <gtest/gtest.h>

#include "ci/crypto/group.hpp"
#include "ci/crypto/hash.hpp"
#include "ci/model/evidence.hpp"
#include "ci/tls/handshake.hpp"
#include "support.hpp"

namespace ci::tls {
namespace {

using testing::code_of;

model::Voucher fixture_voucher() {
  model::Voucher v;
  v.customer = CustomerId{7};
  v.domain = "bank.example";
  v.cycle_id.bytes.fill(0x11);
  v.nonce.fill(0x22);
  return v;
}

// Independent layout: opaque<1..2^16-1> vectors written byte by byte.
Bytes layout_vec16(const Bytes& v) {
  Bytes out = {static_cast<std::uint8_t>(v.size() >> 8), static_cast<std::uint8_t>(v.size() & 0xff)};
  append(out, v);
  return out;
}

TEST(ClientHello, GoldenRandom) {
  const Random r = client_hello(fixture_voucher(), 1'700'000'000);
  EXPECT_EQ(Bytes(r.begin(), r.end()), testing::golden("client_random.hex"));
}

TEST(ServerDhParams, MatchesIndependentLayout) {
  const crypto::BigNum p(0x1234), g(2), ys(0x7f);
  Bytes expected = layout_vec16({0x12, 0x34});
  append(expected, layout_vec16({0x02}));
  append(expected, layout_vec16({0x7f}));
  EXPECT_EQ(encode_server_dh_params(p, g, ys), expected);
}

struct Fixture {
  crypto::DeterministicRng rng{31};
  SimCertificateAuthority ca = SimCertificateAuthority::create("CA", rng);
};

class ServerKeyTest : public ::testing::TestWithParam<crypto::ServerKeyType> {};

TEST_P(ServerKeyTest, SignedParamsGoldenAndSignature) {
  Fixture f;
  const auto server = SimServer::create("bank.example", f.ca, f.rng, 1, 1'700'000'000, GetParam());
  const Random cr = client_hello(fixture_voucher(), 1'700'000'000);
  Random sr;
  sr.fill(0x33);
  const auto t = server_key_exchange(server.key(), crypto::production_group(), cr, sr,
                                     crypto::BigNum::from_hex("0123456789ABCDEF0123456789ABCDEF"));
  EXPECT_EQ(t.signed_params_input(), testing::golden("signed_params.hex"));
  EXPECT_EQ(t.sig_alg, server.key().signature_algorithm());
  EXPECT_TRUE(crypto::verify_with_certificate(server.certificate(), t.sig_alg, t.signed_params_input(), t.signature));
  const auto ev = extract_evidence(t, fixture_voucher(), server.certificate());
  EXPECT_TRUE(model::evidence_is_valid(ev));
  EXPECT_EQ(model::VoucherEvidence::decode(ev.encode()), ev);
  EXPECT_EQ(HandshakeTranscript::decode(t.encode()), t);
}

TEST_P(ServerKeyTest, AnyFlippedSignedByteRejects) {
  Fixture f;
  const auto server = SimServer::create("bank.example", f.ca, f.rng, 1, 1'700'000'000, GetParam());
  const auto voucher = fixture_voucher();
  const auto reply = server.handshake(client_hello(voucher, 1'700'000'000), f.rng);
  ASSERT_NO_THROW(extract_evidence(reply.transcript, voucher, reply.certificate));
  const std::size_t n = reply.transcript.signed_params_input().size();
  for (std::size_t i = 0; i < n; i += 7) {
    auto t = reply.transcript;
    if (i < 32) {
      t.client_random[i] ^= 1;
    } else if (i < 64) {
      t.server_random[i - 32] ^= 1;
    } else {
      t.server_dh_params[i - 64] ^= 1;
    }
    EXPECT_EQ(code_of([&] { extract_evidence(t, voucher, reply.certificate); }), ErrorCode::kEvidenceRejected) << i;
  }
  auto sig = reply.transcript;
  sig.signature[0] ^= 1;
  EXPECT_FALSE(crypto::verify_with_certificate(reply.certificate, sig.sig_alg, sig.signed_params_input(), sig.signature));
}

INSTANTIATE_TEST_SUITE_P(KeyTypes, ServerKeyTest,
                         ::testing::Values(crypto::ServerKeyType::kEd25519, crypto::ServerKeyType::kRsa2048));

TEST(Evidence, H28MismatchRejected) {
  Fixture f;
  const auto server = SimServer::create("bank.example", f.ca, f.rng, 1, 1'700'000'000);
  auto voucher = fixture_voucher();
  const auto reply = server.handshake(client_hello(voucher, 1'700'000'000), f.rng);
  EXPECT_TRUE(model::embeds_voucher(reply.transcript, voucher));
  voucher.nonce[0] ^= 1;
  EXPECT_FALSE(model::embeds_voucher(reply.transcript, voucher));
  EXPECT_EQ(code_of([&] { extract_evidence(reply.transcript, voucher, reply.certificate); }),
            ErrorCode::kEvidenceRejected);
}

TEST(Evidence, WrongCertificateRejected) {
  Fixture f;
  const auto a = SimServer::create("a.example", f.ca, f.rng, 1, 1'700'000'000);
  const auto b = SimServer::create("b.example", f.ca, f.rng, 2, 1'700'000'000);
  const auto voucher = fixture_voucher();
  const auto reply = a.handshake(client_hello(voucher, 1'700'000'000), f.rng);
  EXPECT_EQ(code_of([&] { extract_evidence(reply.transcript, voucher, b.certificate()); }),
            ErrorCode::kEvidenceRejected);
}

TEST(SimServer, MitmSignsWithAttackerKeyUnderRogueCertificate) {
  Fixture f;
  const auto honest = SimServer::create("bank.example", f.ca, f.rng, 1, 1'700'000'000);
  const auto attacker = crypto::PrivateKey::generate(crypto::ServerKeyType::kEd25519, f.rng);
  const Bytes rogue = f.ca.issue("bank.example", attacker, 99, 1'700'000'000);
  const auto mitm = SimServer::mitm("bank.example", rogue, attacker);
  EXPECT_EQ(mitm.behavior(), ServerBehavior::kMitm);
  EXPECT_TRUE(crypto::certificate_matches_domain(rogue, "bank.example"));
  EXPECT_NE(rogue, honest.certificate());
  const auto voucher = fixture_voucher();
  const auto reply = mitm.handshake(client_hello(voucher, 1'700'000'000), f.rng);
  EXPECT_EQ(reply.certificate, rogue);
  EXPECT_NO_THROW(extract_evidence(reply.transcript, voucher, rogue));
  EXPECT_ANY_THROW(extract_evidence(reply.transcript, voucher, honest.certificate()));
  const auto round = SimServer::decode(mitm.encode());
  EXPECT_EQ(round.domain(), "bank.example");
  EXPECT_EQ(round.certificate(), rogue);
  EXPECT_EQ(round.behavior(), ServerBehavior::kMitm);
}

}  // namespace
}  // namespace ci::tls

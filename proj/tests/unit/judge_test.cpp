#include <gtest/gtest.h>

#include <functional>

#include "ci/crypto/bignum.hpp"
#include "ci/crypto/hash.hpp"
#include "ci/crypto/trapdoor_proof.hpp"
#include "ci/judge/judge.hpp"
#include "ci/merkle/tree.hpp"
#include "ci/model/claim.hpp"
#include "support.hpp"

namespace ci::judge {
namespace {

using testing::code_of;
using testing::World;

struct Mutation {
  const char* name;
  std::function<void(model::Claim&)> apply;
  Verdict expected;
};

model::Claim honest_claim(World& w) {
  w.run_cycle({0, 1});
  return w.client->assemble_claim(w.client->archive().back().cycle_id, "host1.test");
}

crypto::BigNum plus_one(const crypto::BigNum& v) {
  return crypto::mod_add(v, crypto::BigNum(1), crypto::production_group().q);
}

TEST(Judge, ValidClaimNeedsRogueAssertion) {
  World w;
  const auto claim = honest_claim(w);
  EXPECT_EQ(verify_claim(claim, w.service->public_key(), true), Verdict::kAccept);
  EXPECT_EQ(verify_claim(claim, w.service->public_key(), false), Verdict::kNotRogue);
  EXPECT_EQ(verify_claim_bytes(claim.encode(), w.service->public_key(), true), Verdict::kAccept);
  crypto::DeterministicRng other(2);
  EXPECT_EQ(verify_claim(claim, crypto::generate_sig_keypair(other).public_part(), true), Verdict::kBadContract);
}

TEST(Judge, SingleMutationsFlipToDocumentedReasons) {
  World w;
  const auto base = honest_claim(w);
  const Bytes other_cert = w.servers[2].certificate();
  const std::vector<Mutation> mutations = {
      {"contract interval", [](auto& c) { c.contract.max_update_interval += 1; }, Verdict::kBadContract},
      {"contract customer", [](auto& c) { c.contract.customer.value += 1; }, Verdict::kBadContract},
      {"contract signature", [](auto& c) { c.contract.insurer_signature[3] ^= 1; }, Verdict::kBadContract},
      {"contract term", [](auto& c) { c.contract.valid_until += 1; }, Verdict::kBadContract},
      {"listed cert byte", [](auto& c) { c.cycle.certificates[0].back() ^= 1; }, Verdict::kBadCertSig},
      {"dropped cert", [](auto& c) { c.cycle.certificates.pop_back(); }, Verdict::kBadCertSig},
      {"download time", [](auto& c) { c.cycle.downloaded_at -= 1; }, Verdict::kBadCertSig},
      {"cycle id", [](auto& c) { c.cycle.cycle_id.bytes[5] ^= 1; }, Verdict::kBadCertSig},
      {"certs randomizer", [](auto& c) { c.cycle.certs_signature.randomizer = plus_one(c.cycle.certs_signature.randomizer); },
       Verdict::kBadCertSig},
      {"certs inner sig", [](auto& c) { c.cycle.certs_signature.inner_signature[0] ^= 1; }, Verdict::kBadCertSig},
      {"certs context", [](auto& c) { c.cycle.certs_signature.context.label = "Vouchers"; }, Verdict::kBadCertSig},
      {"signatures swapped", [](auto& c) { std::swap(c.cycle.certs_signature, c.cycle.vouchers_signature); },
       Verdict::kBadCertSig},
      {"cert index", [](auto& c) { c.cert_index = (c.cert_index + 1) % c.cycle.certificates.size(); },
       Verdict::kCertNotInList},
      {"cert index range", [](auto& c) { c.cert_index = c.cycle.certificates.size(); }, Verdict::kCertNotInList},
      {"evidence cert", [&](auto& c) { c.evidence.certificate = other_cert; }, Verdict::kCertNotInList},
      {"submit time", [](auto& c) { c.cycle.submitted_at += 1; }, Verdict::kBadVoucherSig},
      {"voucher root", [](auto& c) { c.cycle.voucher_root[0] ^= 1; }, Verdict::kBadVoucherSig},
      {"vouchers inner sig", [](auto& c) { c.cycle.vouchers_signature.inner_signature[9] ^= 1; },
       Verdict::kBadVoucherSig},
      {"vouchers randomizer",
       [](auto& c) { c.cycle.vouchers_signature.randomizer = plus_one(c.cycle.vouchers_signature.randomizer); },
       Verdict::kBadVoucherSig},
      {"voucher customer", [](auto& c) { c.evidence.voucher.customer.value += 1; }, Verdict::kVoucherMismatch},
      {"voucher cycle", [](auto& c) { c.evidence.voucher.cycle_id.bytes[0] ^= 1; }, Verdict::kVoucherMismatch},
      {"voucher padding domain", [](auto& c) { c.evidence.voucher.domain = "pad.invalid"; }, Verdict::kVoucherMismatch},
      {"voucher nonce", [](auto& c) { c.evidence.voucher.nonce[0] ^= 1; }, Verdict::kBadMerklePath},
      {"voucher domain", [](auto& c) { c.evidence.voucher.domain = "host2.test"; }, Verdict::kBadMerklePath},
      {"merkle sibling", [](auto& c) { c.inclusion.siblings[0][0] ^= 1; }, Verdict::kBadMerklePath},
      {"merkle index", [](auto& c) { c.inclusion.leaf_index ^= 1; }, Verdict::kBadMerklePath},
      {"merkle size", [](auto& c) { c.inclusion.tree_size += 1; }, Verdict::kBadMerklePath},
      {"client random hash", [](auto& c) { c.evidence.transcript.client_random[10] ^= 1; }, Verdict::kVoucherMismatch},
      {"client random time", [](auto& c) { c.evidence.transcript.client_random[0] ^= 1; }, Verdict::kBadTlsSig},
      {"server random", [](auto& c) { c.evidence.transcript.server_random[0] ^= 1; }, Verdict::kBadTlsSig},
      {"dh params", [](auto& c) { c.evidence.transcript.server_dh_params.back() ^= 1; }, Verdict::kBadTlsSig},
      {"tls signature", [](auto& c) { c.evidence.transcript.signature[0] ^= 1; }, Verdict::kBadTlsSig},
      {"tls algorithm", [](auto& c) { c.evidence.transcript.sig_alg = crypto::kSigAlgRsaPkcs1Sha256; },
       Verdict::kBadTlsSig},
  };
  ASSERT_EQ(verify_claim(base, w.service->public_key(), true), Verdict::kAccept);
  for (const auto& m : mutations) {
    model::Claim c = base;
    m.apply(c);
    EXPECT_EQ(verify_claim(c, w.service->public_key(), true), m.expected) << m.name;
    // Mutated claims also survive the wire unchanged in meaning.
    EXPECT_EQ(verify_claim_bytes(c.encode(), w.service->public_key(), true), m.expected) << m.name;
  }
}

TEST(Judge, MalformedBytesAreParseErrors) {
  World w;
  const Bytes enc = honest_claim(w).encode();
  for (std::size_t cut : {std::size_t{0}, std::size_t{5}, enc.size() / 2, enc.size() - 1}) {
    const Bytes truncated(enc.begin(), enc.begin() + static_cast<std::ptrdiff_t>(cut));
    EXPECT_EQ(code_of([&] { verify_claim_bytes(truncated, w.service->public_key(), true); }), ErrorCode::kParse);
  }
}

TEST(Judge, UpdateIntervalBoundary) {
  for (std::uint64_t delay : {120u, 121u}) {
    World w(8, 2, 120);
    w.run_cycle({0}, delay);
    const auto claim = w.client->assemble_claim(w.client->archive().back().cycle_id, "host0.test");
    EXPECT_EQ(verify_claim(claim, w.service->public_key(), true), delay <= 120 ? Verdict::kAccept : Verdict::kUpdateLate);
  }
}

TEST(Judge, CycleBeforeContractStartIsOutsideTerm) {
  World w;
  const auto t = w.clock.now() - 100;  // still inside the insurer's recency window
  w.client->do_update_cycle(*w.stub, t);
  w.client->browse("host0.test", w.servers[0], t);
  w.client->submit_cycle(*w.stub, w.clock.now());
  const auto claim = w.client->assemble_claim(w.client->archive().back().cycle_id, "host0.test");
  EXPECT_EQ(verify_claim(claim, w.service->public_key(), true), Verdict::kOutsideTerm);
}

TEST(Judge, VoucherFromAnotherCustomerIsRejected) {
  World w;
  client::ClientAgent bob = client::ClientAgent::create(w.rng);
  bob.register_with(*w.stub, w.service->public_key());
  const auto alice_claim = honest_claim(w);
  const auto t = w.clock.now();
  bob.do_update_cycle(*w.stub, t);
  bob.browse("host1.test", w.servers[1], t);
  bob.submit_cycle(*w.stub, t + 5);
  auto claim = bob.assemble_claim(bob.archive().back().cycle_id, "host1.test");
  ASSERT_EQ(verify_claim(claim, w.service->public_key(), true), Verdict::kAccept);
  claim.evidence = alice_claim.evidence;
  EXPECT_EQ(verify_claim(claim, w.service->public_key(), true), Verdict::kVoucherMismatch);
  claim.inclusion = alice_claim.inclusion;
  EXPECT_EQ(verify_claim(claim, w.service->public_key(), true), Verdict::kVoucherMismatch);
}

// A client that skips its own hostname check: voucher for alias.test, connection to host0's certificate.
TEST(Judge, HostnameMismatchFromCheatingClient) {
  World w;
  const auto& contract = w.client->contract();
  const auto& keys = w.client->keys();
  const auto t = w.clock.now();
  const auto offer = w.stub->begin_cycle(contract.customer);
  model::CycleEvidence cycle;
  cycle.certificates = offer.certificates;
  cycle.cycle_id = offer.cycle_id;
  cycle.downloaded_at = t;
  const Bytes certs_payload = model::certificates_payload(contract.customer, cycle);
  cycle.certs_signature =
      w.stub->ack_certificates({contract.customer, offer.cycle_id, t, crypto::sign(keys, certs_payload)});

  model::Voucher v{contract.customer, "alias.test", offer.cycle_id, w.rng.array<32>()};
  const auto reply = w.servers[0].handshake(tls::client_hello(v, t), w.rng);
  const auto evidence = tls::extract_evidence(reply.transcript, v, reply.certificate);
  const auto tree =
      merkle::PaddedMerkleTree::build(contract.customer, offer.cycle_id, {v}, offer.certificates.size(), Digest{});
  cycle.submitted_at = t + 1;
  cycle.voucher_root = tree.root();
  const Bytes vouchers_payload = model::vouchers_payload(contract.customer, cycle);
  cycle.vouchers_signature = w.stub
                                 ->submit_vouchers({contract.customer, offer.cycle_id, t + 1, tree.root(),
                                                    crypto::sign(keys, vouchers_payload)})
                                 .signature;
  model::Claim claim{contract, cycle, tree.prove(v), evidence, 0};
  EXPECT_EQ(verify_claim(claim, w.service->public_key(), true), Verdict::kDomainMismatch);
}

TEST(Resolve, GenuineRecordBindsInsurer) {
  World w;
  const auto claim = honest_claim(w);
  const auto& sig = claim.cycle.vouchers_signature;
  const Bytes msg = model::vouchers_payload(claim.contract.customer, claim.cycle);
  const auto ch = crypto::chameleon_hash(claim.contract.chameleon_key, msg, sig.randomizer);
  const auto record = w.service->lookup_record(
      {insurer::RecordQuery::Kind::kChameleonValue, ch.to_bytes(w.service->group().element_size())});
  ASSERT_TRUE(record);
  EXPECT_EQ(resolve_denial(claim.contract, msg, sig, record), Ruling::kInsurerBound);
  EXPECT_EQ(resolve_denial(claim.contract, msg, sig, std::nullopt), Ruling::kInsurerBound);
  EXPECT_EQ(ruling_name(Ruling::kInsurerBound), "INSURER_BOUND");
}

TEST(Resolve, ForgeryVerifiesButIsExposedByTheRecord) {
  World w(4, 4, 60);
  w.run_cycle({0}, 600);  // late: not covered
  const auto& a = w.client->archive().back();
  auto claim = w.client->assemble_claim(a.cycle_id, "host0.test");
  ASSERT_EQ(verify_claim(claim, w.service->public_key(), true), Verdict::kUpdateLate);

  // The customer rewrites t' with its trapdoor; the judge cannot tell on its own.
  const Bytes original = model::vouchers_payload(claim.contract.customer, claim.cycle);
  const auto original_sig = claim.cycle.vouchers_signature;
  claim.cycle.submitted_at = claim.cycle.downloaded_at + 30;
  const Bytes forged_msg = model::vouchers_payload(claim.contract.customer, claim.cycle);
  claim.cycle.vouchers_signature =
      crypto::forge_signature(w.client->chameleon_keys(), original, original_sig, forged_msg);
  EXPECT_EQ(verify_claim(claim, w.service->public_key(), true), Verdict::kAccept);

  const auto ch = crypto::chameleon_hash(claim.contract.chameleon_key, forged_msg,
                                         claim.cycle.vouchers_signature.randomizer);
  const auto record = w.service->lookup_record(
      {insurer::RecordQuery::Kind::kChameleonValue, ch.to_bytes(w.service->group().element_size())});
  ASSERT_TRUE(record);
  EXPECT_EQ(record->message, original);
  EXPECT_EQ(resolve_denial(claim.contract, forged_msg, claim.cycle.vouchers_signature, record),
            Ruling::kCustomerForged);
}

TEST(Resolve, FabricatedRecordDoesNotHelpInsurer) {
  World w;
  const auto claim = honest_claim(w);
  const auto& sig = claim.cycle.certs_signature;
  const Bytes msg = model::certificates_payload(claim.contract.customer, claim.cycle);
  const auto ch = crypto::chameleon_hash(claim.contract.chameleon_key, msg, sig.randomizer);
  insurer::ChameleonRecord fake{claim.contract.customer, Bytes{1, 2, 3}, crypto::BigNum(7), ch};
  EXPECT_EQ(resolve_denial(claim.contract, msg, sig, fake), Ruling::kInsurerBound);
}

TEST(Resolve, InvalidDisputedSignatureIsAnError) {
  World w;
  const auto claim = honest_claim(w);
  auto sig = claim.cycle.certs_signature;
  sig.inner_signature[0] ^= 1;
  const Bytes msg = model::certificates_payload(claim.contract.customer, claim.cycle);
  EXPECT_EQ(code_of([&] { resolve_denial(claim.contract, msg, sig, std::nullopt); }), ErrorCode::kBadSignature);
  auto edited = claim.contract;
  edited.max_update_interval += 1;
  EXPECT_EQ(code_of([&] { resolve_denial(edited, msg, claim.cycle.certs_signature, std::nullopt); }),
            ErrorCode::kBadSignature);
}

TEST(Verdicts, ExitCodesAndNames) {
  EXPECT_EQ(verdict_exit_code(Verdict::kAccept), 0);
  EXPECT_EQ(verdict_exit_code(Verdict::kBadContract), 10);
  EXPECT_EQ(verdict_exit_code(Verdict::kNotRogue), 20);
  EXPECT_EQ(verdict_name(Verdict::kUpdateLate), "UPDATE_LATE");
  EXPECT_EQ(verdict_name(Verdict::kBadMerklePath), "BAD_MERKLE_PATH");
}

}  // namespace
}  // namespace ci::judge

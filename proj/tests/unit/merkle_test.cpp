#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>
#include <map>
#include <set>

#include "ci/crypto/hash.hpp"
#include "ci/crypto/random.hpp"
#include "ci/merkle/proof.hpp"
#include "ci/merkle/tree.hpp"
#include "support.hpp"

namespace ci::merkle {
namespace {

using testing::code_of;

Digest oracle_h(std::uint8_t prefix, ByteView a, ByteView b = {}) {
  Bytes m = {0x68, prefix};
  append(m, a);
  append(m, b);
  return crypto::sha256(m);
}

// Bottom-up oracle: pair neighbours level by level, promoting an unpaired last node.
Digest oracle_root(std::vector<Digest> level) {
  while (level.size() > 1) {
    std::vector<Digest> next;
    for (std::size_t i = 0; i + 1 < level.size(); i += 2) next.push_back(oracle_h(0x01, level[i], level[i + 1]));
    if (level.size() % 2) next.push_back(level.back());
    level = std::move(next);
  }
  return level[0];
}

std::vector<Digest> leaves_of(std::size_t n) {
  std::vector<Digest> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(leaf_hash(as_bytes("leaf" + std::to_string(i))));
  return out;
}

std::map<std::string, std::string> golden_vectors() {
  std::ifstream in(std::string(CI_GOLDEN_DIR) + "/merkle.txt");
  std::map<std::string, std::string> out;
  std::string k, v;
  while (in >> k >> v) out[k] = v;
  return out;
}

TEST(Merkle, HashingIsDomainSeparated) {
  const Bytes d = {1, 2};
  EXPECT_EQ(leaf_hash(d), oracle_h(0x00, d));
  const Digest a = leaf_hash(Bytes{1}), b = leaf_hash(Bytes{2});
  EXPECT_EQ(node_hash(a, b), oracle_h(0x01, a, b));
  EXPECT_NE(node_hash(a, b), node_hash(b, a));
}

TEST(Merkle, GoldenVectors) {
  const auto g = golden_vectors();
  ASSERT_EQ(g.size(), 10u);
  const auto leaves = leaves_of(7);
  for (int i = 0; i < 4; ++i) EXPECT_EQ(to_hex(leaves[i]), g.at("leaf" + std::to_string(i)));
  for (std::size_t n : {1, 2, 3, 4, 5, 7}) {
    const std::vector<Digest> sub(leaves.begin(), leaves.begin() + static_cast<std::ptrdiff_t>(n));
    EXPECT_EQ(to_hex(tree_root(sub)), g.at("root" + std::to_string(n))) << n;
  }
}

TEST(Merkle, RootAndEveryPathAgainstOracle) {
  for (std::size_t n = 1; n <= 64; ++n) {
    const auto leaves = leaves_of(n);
    const Digest root = tree_root(leaves);
    ASSERT_EQ(root, oracle_root(leaves)) << n;
  }
}

std::vector<model::Voucher> real_vouchers(std::size_t k, crypto::Rng& rng, const CycleId& cid) {
  std::vector<model::Voucher> out;
  for (std::size_t i = 0; i < k; ++i) {
    model::Voucher v;
    v.customer = CustomerId{3};
    v.domain = "d" + std::to_string(i) + ".test";
    v.cycle_id = cid;
    v.nonce = rng.array<32>();
    out.push_back(v);
  }
  return out;
}

TEST(PaddedTree, EveryRealVoucherProvesAtEverySize) {
  crypto::DeterministicRng rng(11);
  CycleId cid;
  cid.bytes[0] = 1;
  for (std::size_t n = 1; n <= 64; ++n) {
    const auto real = real_vouchers((n + 1) / 2, rng, cid);
    const auto tree = PaddedMerkleTree::build(CustomerId{3}, cid, real, n, rng.array<32>());
    ASSERT_EQ(tree.size(), n);
    ASSERT_EQ(tree.root(), oracle_root(tree.leaves()));
    for (const auto& v : real) {
      const auto proof = tree.prove(v);
      EXPECT_EQ(proof.tree_size, n);
      EXPECT_TRUE(verify_inclusion(tree.root(), voucher_leaf_hash(v), proof));
    }
    for (std::size_t i = 0; i < n; ++i) EXPECT_TRUE(verify_inclusion(tree.root(), tree.leaves()[i], tree.prove_index(i)));
  }
}

TEST(PaddedTree, LargeTree) {
  crypto::DeterministicRng rng(12);
  CycleId cid;
  const auto real = real_vouchers(100, rng, cid);
  const auto tree = PaddedMerkleTree::build(CustomerId{3}, cid, real, 257, rng.array<32>());
  EXPECT_EQ(tree.root(), oracle_root(tree.leaves()));
  const auto proof = tree.prove(real[57]);
  EXPECT_EQ(proof.siblings.size(), 9u);
  EXPECT_TRUE(verify_inclusion(tree.root(), voucher_leaf_hash(real[57]), proof));
}

TEST(PaddedTree, TamperedProofsFail) {
  crypto::DeterministicRng rng(13);
  CycleId cid;
  const auto real = real_vouchers(5, rng, cid);
  const auto tree = PaddedMerkleTree::build(CustomerId{3}, cid, real, 13, rng.array<32>());
  const auto leaf = voucher_leaf_hash(real[2]);
  const auto proof = tree.prove(real[2]);
  for (std::size_t s = 0; s < proof.siblings.size(); ++s) {
    auto bad = proof;
    bad.siblings[s][0] ^= 0x80;
    EXPECT_FALSE(verify_inclusion(tree.root(), leaf, bad));
  }
  auto moved = proof;
  moved.leaf_index = (proof.leaf_index + 1) % 13;
  EXPECT_FALSE(verify_inclusion(tree.root(), leaf, moved));
  auto resized = proof;
  resized.tree_size = 4;
  EXPECT_FALSE(verify_inclusion(tree.root(), leaf, resized));
  auto shortened = proof;
  shortened.siblings.pop_back();
  EXPECT_FALSE(verify_inclusion(tree.root(), leaf, shortened));
  auto out_of_range = proof;
  out_of_range.leaf_index = 13;
  EXPECT_FALSE(verify_inclusion(tree.root(), leaf, out_of_range));
  EXPECT_EQ(InclusionProof::decode(proof.encode()), proof);
}

TEST(PaddedTree, ProofDoesNotTransferAcrossCycles) {
  crypto::DeterministicRng rng(14);
  CycleId c1, c2;
  c2.bytes[0] = 2;
  const auto real = real_vouchers(3, rng, c1);
  const Digest seed = rng.array<32>();
  const auto t1 = PaddedMerkleTree::build(CustomerId{3}, c1, real, 8, seed);
  const auto t2 = PaddedMerkleTree::build(CustomerId{3}, c2, real_vouchers(3, rng, c2), 8, seed);
  const auto proof = t1.prove(real[0]);
  EXPECT_FALSE(verify_inclusion(t2.root(), voucher_leaf_hash(real[0]), proof));
}

TEST(PaddedTree, DeterministicInSeedAndHidesOrder) {
  crypto::DeterministicRng rng(15);
  CycleId cid;
  const auto real = real_vouchers(4, rng, cid);
  const Digest seed = rng.array<32>();
  const auto a = PaddedMerkleTree::build(CustomerId{3}, cid, real, 16, seed);
  const auto b = PaddedMerkleTree::build(CustomerId{3}, cid, real, 16, seed);
  EXPECT_EQ(a.root(), b.root());
  const auto c = PaddedMerkleTree::build(CustomerId{3}, cid, real, 16, rng.array<32>());
  EXPECT_NE(a.root(), c.root());
  std::size_t padding = 0;
  for (const auto& v : a.ordered_vouchers()) padding += v.is_padding();
  EXPECT_EQ(padding, 12u);
  const auto pad = std::find_if(a.ordered_vouchers().begin(), a.ordered_vouchers().end(),
                                 [](const model::Voucher& v) { return v.is_padding(); });
  EXPECT_EQ(code_of([&] { a.prove(*pad); }), ErrorCode::kParameter);
}

TEST(PaddedTree, CapacityAndSizeErrors) {
  crypto::DeterministicRng rng(16);
  CycleId cid;
  const auto real = real_vouchers(5, rng, cid);
  EXPECT_EQ(code_of([&] { PaddedMerkleTree::build(CustomerId{3}, cid, real, 4, Digest{}); }), ErrorCode::kCapacity);
  EXPECT_EQ(code_of([&] { PaddedMerkleTree::build(CustomerId{3}, cid, {}, 0, Digest{}); }), ErrorCode::kParameter);
  const auto full = PaddedMerkleTree::build(CustomerId{3}, cid, real, 5, Digest{});
  for (const auto& v : full.ordered_vouchers()) EXPECT_FALSE(v.is_padding());
  const auto empty = PaddedMerkleTree::build(CustomerId{3}, cid, {}, 3, Digest{});
  for (const auto& v : empty.ordered_vouchers()) EXPECT_TRUE(v.is_padding());
  model::Voucher stranger = real[0];
  stranger.nonce[0] ^= 1;
  EXPECT_EQ(code_of([&] { full.prove(stranger); }), ErrorCode::kNotFound);
}

// Property: the permutation is a bijection and roughly uniform over small n.
TEST(Permutation, BijectiveAndUniform) {
  crypto::DeterministicRng rng(17);
  std::map<std::vector<std::size_t>, int> counts;
  for (int i = 0; i < 6000; ++i) {
    const auto p = seeded_permutation(rng.array<32>(), 3);
    ASSERT_EQ(std::set<std::size_t>(p.begin(), p.end()).size(), 3u);
    counts[p]++;
  }
  EXPECT_EQ(counts.size(), 6u);
  for (const auto& [perm, c] : counts) {
    EXPECT_GT(c, 850);
    EXPECT_LT(c, 1150);
  }
  const auto big = seeded_permutation(Digest{}, 1000);
  EXPECT_EQ(std::set<std::size_t>(big.begin(), big.end()).size(), 1000u);
}

}  // namespace
}  // namespace ci::merkle

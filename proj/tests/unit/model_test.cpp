#include <gtest/gtest.h>

#include <algorithm>

#include "ci/crypto/random.hpp"
#include "ci/model/contract.hpp"
#include "ci/model/rollback.hpp"
#include "ci/model/voucher.hpp"
#include "support.hpp"

namespace ci::model {
namespace {

using testing::code_of;

Voucher fixture_voucher() {
  Voucher v;
  v.customer = CustomerId{7};
  v.domain = "bank.example";
  v.cycle_id.bytes.fill(0x11);
  v.nonce.fill(0x22);
  return v;
}

TEST(Voucher, GoldenEncoding) {
  EXPECT_EQ(fixture_voucher().encode(), testing::golden("voucher.hex"));
  EXPECT_EQ(Voucher::decode(testing::golden("voucher.hex")), fixture_voucher());
  EXPECT_FALSE(fixture_voucher().is_padding());
}

TEST(UpdateTimely, InclusiveBoundary) {
  EXPECT_TRUE(update_was_timely(100, 100, 0));
  EXPECT_TRUE(update_was_timely(100, 200, 100));
  EXPECT_FALSE(update_was_timely(100, 201, 100));
  EXPECT_FALSE(update_was_timely(100, 99, 100));
}

Bytes cert(std::uint32_t id) {
  Bytes b = {0xce};
  append_u32_be(b, id);
  return b;
}

CertificateList random_list(crypto::Rng& rng, std::size_t max_len, std::uint32_t universe) {
  std::vector<std::uint32_t> ids(universe);
  for (std::uint32_t i = 0; i < universe; ++i) ids[i] = i;
  for (std::size_t i = universe; i > 1; --i) std::swap(ids[i - 1], ids[rng.uniform(i)]);
  const std::size_t len = 1 + rng.uniform(max_len);
  CertificateList out;
  for (std::size_t i = 0; i < len && i < universe; ++i) out.push_back(cert(ids[i]));
  return out;
}

// Oracle: a full copy of every previous list.
TEST(Rollback, RandomPairsMatchFullCopyOracle) {
  crypto::DeterministicRng rng(21);
  for (int i = 0; i < 100; ++i) {
    const auto prev = random_list(rng, 20, 30);
    const auto cur = random_list(rng, 20, 30);
    const auto delta = diff_cert_lists(prev, cur, 5, 1234);
    EXPECT_EQ(apply_rollback(cur, 5, delta), prev) << i;
    EXPECT_EQ(RollbackDelta::decode(delta.encode()), delta);
  }
}

TEST(Rollback, DuplicatesFallBackToFullReplacement) {
  const CertificateList prev = {cert(1), cert(1), cert(2)};
  const CertificateList cur = {cert(2), cert(1)};
  EXPECT_EQ(apply_rollback(cur, 1, diff_cert_lists(prev, cur, 1, 0)), prev);
}

TEST(Rollback, SmallChangeGivesSmallDelta) {
  CertificateList prev;
  for (std::uint32_t i = 0; i < 50; ++i) prev.push_back(cert(i));
  CertificateList cur = prev;
  cur.erase(cur.begin() + 10);
  cur.push_back(cert(99));
  const auto d = diff_cert_lists(prev, cur, 2, 0);
  EXPECT_EQ(d.added.size(), 1u);
  EXPECT_EQ(d.removed.size(), 1u);
  EXPECT_TRUE(diff_cert_lists(prev, prev, 2, 0).empty());
}

TEST(Rollback, WrongCycleOrCorruptDeltaRejected) {
  const CertificateList prev = {cert(1), cert(2)};
  const CertificateList cur = {cert(2), cert(3)};
  const auto d = diff_cert_lists(prev, cur, 4, 0);
  EXPECT_EQ(code_of([&] { apply_rollback(cur, 5, d); }), ErrorCode::kParameter);
  EXPECT_EQ(code_of([&] { apply_rollback({cert(2), cert(4)}, 4, d); }), ErrorCode::kCorruption);
}

TEST(Rollback, TenCycleChainReconstructsEveryList) {
  crypto::DeterministicRng rng(22);
  std::vector<CertificateList> history = {random_list(rng, 15, 40)};
  RollbackLog log = {diff_cert_lists({}, history[0], 0, 0)};
  for (std::uint64_t i = 1; i < 10; ++i) {
    history.push_back(random_list(rng, 15, 40));
    log.push_back(diff_cert_lists(history[i - 1], history[i], i, i * 100));
  }
  const auto decoded = decode_rollback_log(encode_rollback_log(log));
  EXPECT_EQ(decoded, log);
  for (std::uint64_t j = 0; j < 10; ++j) EXPECT_EQ(reconstruct_cert_list(history[9], 9, decoded, j), history[j]) << j;
}

TEST(Rollback, ExpiryNeedsBothTermAndRetentionPassed) {
  RollbackDelta d;
  d.target_timestamp = 1000;
  EXPECT_FALSE(rollback_expired(d, {500, 2000, 100, 5000}));   // inside term
  EXPECT_FALSE(rollback_expired(d, {1500, 2000, 100, 1050}));  // inside retention
  EXPECT_TRUE(rollback_expired(d, {1500, 2000, 100, 1101}));
  EXPECT_FALSE(rollback_expired(d, {1500, 2000, 100, 1100}));
}

TEST(Rollback, ExpireKeepsContiguousSuffix) {
  RollbackLog log;
  for (std::uint64_t i = 0; i < 5; ++i) {
    RollbackDelta d;
    d.cycle_index = i;
    d.target_timestamp = i * 100;
    log.push_back(d);
  }
  const auto kept = expire_rollbacks(log, {10'000, 20'000, 250, 500});
  ASSERT_EQ(kept.size(), 2u);
  EXPECT_EQ(kept.front().cycle_index, 3u);
  EXPECT_EQ(expire_rollbacks(log, {0, 20'000, 0, 100'000}).size(), 5u);
}

}  // namespace
}  // namespace ci::model

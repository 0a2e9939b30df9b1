#include "ci/model/rollback.hpp"

#include <algorithm>
#include <map>

#include "ci/common/error.hpp"
#include "ci/crypto/hash.hpp"
#include "ci/wire/tlv.hpp"

namespace ci::model {

using wire::Tag;

Bytes RollbackDelta::encode() const {
  wire::TlvWriter w;
  w.u64(Tag::kIndex, cycle_index).u64(Tag::kTimestamp, target_timestamp);
  wire::TlvWriter adds;
  for (const auto& [pos, hash] : added) {
    adds.raw(wire::TlvWriter().u64(Tag::kIndex, pos).bytes(Tag::kHash, hash).finish(Tag::kDeltaAdded));
  }
  wire::TlvWriter rems;
  for (const auto& [pos, cert] : removed) {
    rems.raw(wire::TlvWriter().u64(Tag::kIndex, pos).bytes(Tag::kCertDer, cert).finish(Tag::kDeltaRemoved));
  }
  return w.raw(adds.finish(Tag::kList)).raw(rems.finish(Tag::kList)).finish(Tag::kRollbackDelta);
}

RollbackDelta RollbackDelta::decode(ByteView encoded) {
  wire::TlvReader r(wire::open_record(encoded, Tag::kRollbackDelta));
  RollbackDelta d;
  d.cycle_index = r.u64(Tag::kIndex);
  d.target_timestamp = r.u64(Tag::kTimestamp);
  wire::TlvReader adds(r.bytes(Tag::kList));
  while (!adds.at_end()) {
    wire::TlvReader e(adds.bytes(Tag::kDeltaAdded));
    const auto pos = static_cast<std::uint32_t>(e.u64(Tag::kIndex));
    d.added.emplace_back(pos, e.fixed<32>(Tag::kHash));
    e.expect_end();
  }
  wire::TlvReader rems(r.bytes(Tag::kList));
  while (!rems.at_end()) {
    wire::TlvReader e(rems.bytes(Tag::kDeltaRemoved));
    const auto pos = static_cast<std::uint32_t>(e.u64(Tag::kIndex));
    const ByteView cert = e.bytes(Tag::kCertDer);
    d.removed.emplace_back(pos, Bytes(cert.begin(), cert.end()));
    e.expect_end();
  }
  r.expect_end();
  return d;
}

Bytes encode_rollback_log(const RollbackLog& log) {
  wire::TlvWriter w;
  for (const auto& d : log) w.raw(d.encode());
  return w.finish(Tag::kRollbackLog);
}

RollbackLog decode_rollback_log(ByteView encoded) {
  wire::TlvReader r(wire::open_record(encoded, Tag::kRollbackLog));
  RollbackLog log;
  while (!r.at_end()) log.push_back(RollbackDelta::decode(r.element(Tag::kRollbackDelta)));
  return log;
}

namespace {

bool has_duplicates(const CertificateList& list) {
  std::vector<const Bytes*> ptrs;
  ptrs.reserve(list.size());
  for (const auto& c : list) ptrs.push_back(&c);
  std::sort(ptrs.begin(), ptrs.end(), [](const Bytes* a, const Bytes* b) { return *a < *b; });
  return std::adjacent_find(ptrs.begin(), ptrs.end(), [](const Bytes* a, const Bytes* b) { return *a == *b; }) !=
         ptrs.end();
}

// Positions (into `seq`) of one longest strictly increasing subsequence.
std::vector<std::size_t> longest_increasing(const std::vector<std::size_t>& seq) {
  std::vector<std::size_t> tails;  // index into seq of the tail of each length
  std::vector<std::size_t> parent(seq.size(), SIZE_MAX);
  for (std::size_t i = 0; i < seq.size(); ++i) {
    auto it = std::lower_bound(tails.begin(), tails.end(), seq[i],
                               [&](std::size_t t, std::size_t v) { return seq[t] < v; });
    if (it != tails.begin()) parent[i] = *(it - 1);
    if (it == tails.end()) {
      tails.push_back(i);
    } else {
      *it = i;
    }
  }
  std::vector<std::size_t> out;
  if (tails.empty()) return out;
  for (std::size_t i = tails.back(); i != SIZE_MAX; i = parent[i]) out.push_back(i);
  std::reverse(out.begin(), out.end());
  return out;
}

}  // namespace

RollbackDelta diff_cert_lists(const CertificateList& previous, const CertificateList& current,
                              std::uint64_t cycle_index, std::uint64_t target_timestamp) {
  RollbackDelta delta;
  delta.cycle_index = cycle_index;
  delta.target_timestamp = target_timestamp;

  std::vector<bool> kept_current(current.size(), false);
  std::vector<bool> kept_previous(previous.size(), false);

  if (!has_duplicates(previous) && !has_duplicates(current)) {
    std::map<Bytes, std::size_t> previous_index;
    for (std::size_t i = 0; i < previous.size(); ++i) previous_index.emplace(previous[i], i);
    std::vector<std::size_t> cur_pos;
    std::vector<std::size_t> old_pos;
    for (std::size_t j = 0; j < current.size(); ++j) {
      auto it = previous_index.find(current[j]);
      if (it != previous_index.end()) {
        cur_pos.push_back(j);
        old_pos.push_back(it->second);
      }
    }
    for (std::size_t k : longest_increasing(old_pos)) {
      kept_current[cur_pos[k]] = true;
      kept_previous[old_pos[k]] = true;
    }
  }

  for (std::size_t j = 0; j < current.size(); ++j) {
    if (!kept_current[j]) delta.added.emplace_back(static_cast<std::uint32_t>(j), crypto::hash_h(current[j]));
  }
  for (std::size_t i = 0; i < previous.size(); ++i) {
    if (!kept_previous[i]) delta.removed.emplace_back(static_cast<std::uint32_t>(i), previous[i]);
  }
  return delta;
}

CertificateList apply_rollback(const CertificateList& current, std::uint64_t current_index,
                               const RollbackDelta& delta) {
  if (delta.cycle_index != current_index) {
    throw Error(ErrorCode::kParameter, "rollback delta is for cycle " + std::to_string(delta.cycle_index) +
                                           ", not " + std::to_string(current_index));
  }
  std::vector<bool> drop(current.size(), false);
  for (const auto& [pos, hash] : delta.added) {
    if (pos >= current.size() || drop[pos]) throw Error(ErrorCode::kCorruption, "rollback position out of range");
    if (crypto::hash_h(current[pos]) != hash) throw Error(ErrorCode::kCorruption, "rollback hash mismatch");
    drop[pos] = true;
  }
  CertificateList out;
  out.reserve(current.size() - delta.added.size() + delta.removed.size());
  for (std::size_t j = 0; j < current.size(); ++j) {
    if (!drop[j]) out.push_back(current[j]);
  }
  auto removed = delta.removed;
  std::sort(removed.begin(), removed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& [pos, cert] : removed) {
    if (pos > out.size()) throw Error(ErrorCode::kCorruption, "rollback insert position out of range");
    out.insert(out.begin() + pos, cert);
  }
  return out;
}

CertificateList reconstruct_cert_list(const CertificateList& current, std::uint64_t current_index,
                                      const RollbackLog& log, std::uint64_t target_index) {
  if (target_index > current_index) throw Error(ErrorCode::kParameter, "cannot roll forward");
  CertificateList list = current;
  for (std::uint64_t i = current_index; i > target_index; --i) {
    auto it = std::find_if(log.begin(), log.end(), [i](const RollbackDelta& d) { return d.cycle_index == i; });
    if (it == log.end()) throw Error(ErrorCode::kNotFound, "no rollback delta for cycle " + std::to_string(i));
    list = apply_rollback(list, i, *it);
  }
  return list;
}

bool rollback_expired(const RollbackDelta& delta, const PolicyWindow& window) {
  const std::uint64_t t = delta.target_timestamp;
  const bool outside_term = t < window.valid_from || t > window.valid_until;
  const bool outside_retention = window.now > t && window.now - t > window.retention_seconds;
  return outside_term && outside_retention;
}

RollbackLog expire_rollbacks(const RollbackLog& log, const PolicyWindow& window) {
  auto sorted = log;
  std::sort(sorted.begin(), sorted.end(),
            [](const RollbackDelta& a, const RollbackDelta& b) { return a.cycle_index < b.cycle_index; });
  auto first_live = std::find_if(sorted.begin(), sorted.end(),
                                 [&](const RollbackDelta& d) { return !rollback_expired(d, window); });
  return RollbackLog(first_live, sorted.end());
}

}  // namespace ci::model

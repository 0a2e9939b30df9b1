#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ci/common/bytes.hpp"
#include "ci/wire/payload.hpp"

namespace ci::model {

using wire::CertificateList;

/// Reconstructs C_{i-1} from C_i. `added` lists entries of C_i that were new in
/// cycle i (by position in C_i and certificate hash); `removed` lists entries of
/// C_{i-1} that cycle i dropped (by position in C_{i-1}, with the full DER).
struct RollbackDelta {
  std::uint64_t cycle_index = 0;
  /// Download time of cycle i-1, the list this delta reconstructs.
  std::uint64_t target_timestamp = 0;
  std::vector<std::pair<std::uint32_t, Digest>> added;
  std::vector<std::pair<std::uint32_t, Bytes>> removed;

  bool empty() const { return added.empty() && removed.empty(); }
  Bytes encode() const;
  static RollbackDelta decode(ByteView encoded);
  friend bool operator==(const RollbackDelta&, const RollbackDelta&) = default;
};

using RollbackLog = std::vector<RollbackDelta>;

Bytes encode_rollback_log(const RollbackLog& log);
RollbackLog decode_rollback_log(ByteView encoded);

/// Order-preserving delta with apply_rollback(current, delta) == previous.
/// Keeps the longest common subsequence in place when both lists are duplicate
/// free; otherwise it degenerates to a full replacement.
RollbackDelta diff_cert_lists(const CertificateList& previous, const CertificateList& current,
                              std::uint64_t cycle_index, std::uint64_t target_timestamp);

/// Throws ErrorCode::kParameter when the delta belongs to another cycle and
/// ErrorCode::kCorruption when a position or hash does not match.
CertificateList apply_rollback(const CertificateList& current, std::uint64_t current_index,
                               const RollbackDelta& delta);

/// Walks the log backwards from (current, current_index) down to target_index.
CertificateList reconstruct_cert_list(const CertificateList& current, std::uint64_t current_index,
                                      const RollbackLog& log, std::uint64_t target_index);

struct PolicyWindow {
  std::uint64_t valid_from = 0;
  std::uint64_t valid_until = 0;
  std::uint64_t retention_seconds = 0;
  std::uint64_t now = 0;
};

bool rollback_expired(const RollbackDelta& delta, const PolicyWindow& window);

/// Drops the oldest deltas while they are expired; the chain stays contiguous.
RollbackLog expire_rollbacks(const RollbackLog& log, const PolicyWindow& window);

}  // namespace ci::model

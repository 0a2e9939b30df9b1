#pragma once

#include <vector>

#include "ci/merkle/proof.hpp"
#include "ci/model/voucher.hpp"

namespace ci::merkle {

/// Voucher commitment of one cycle: the real vouchers padded with
/// seed-derived dummies up to the certificate-list size, shuffled by a
/// seed-derived permutation, and hashed into an RFC 6962 shaped tree.
/// Fully determined by (customer, cycle, real vouchers, size, seed).
class PaddedMerkleTree {
 public:
  /// Throws ErrorCode::kCapacity when real.size() > size, ErrorCode::kParameter when size == 0.
  static PaddedMerkleTree build(CustomerId customer, const CycleId& cycle_id, const std::vector<model::Voucher>& real,
                                std::size_t size, const Digest& seed);

  const Digest& root() const { return root_; }
  std::size_t size() const { return leaves_.size(); }
  const std::vector<Digest>& leaves() const { return leaves_; }
  const std::vector<model::Voucher>& ordered_vouchers() const { return vouchers_; }

  /// Throws ErrorCode::kNotFound if absent and ErrorCode::kParameter for padding leaves.
  InclusionProof prove(const model::Voucher& voucher) const;
  InclusionProof prove_index(std::size_t index) const;

 private:
  std::vector<model::Voucher> vouchers_;
  std::vector<Digest> leaves_;
  Digest root_{};
};

model::Voucher padding_voucher(CustomerId customer, const CycleId& cycle_id, const Digest& seed, std::uint64_t i);

/// Fisher-Yates permutation of [0, n) driven by PRF(seed, "perm" || counter).
std::vector<std::size_t> seeded_permutation(const Digest& seed, std::size_t n);

Digest voucher_leaf_hash(const model::Voucher& voucher);

/// Root of the log-structured tree over `leaves` (split at the largest power of two < n).
Digest tree_root(const std::vector<Digest>& leaves);

}  // namespace ci::merkle

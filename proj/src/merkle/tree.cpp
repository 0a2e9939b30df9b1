#include "ci/merkle/tree.hpp"

#include <algorithm>
#include <limits>

#include "ci/common/error.hpp"
#include "ci/crypto/hash.hpp"

namespace ci::merkle {
namespace {

std::size_t split_point(std::size_t n) {
  std::size_t k = 1;
  while (k << 1 < n) k <<= 1;
  return k;
}

Digest subtree_root(const Digest* leaves, std::size_t n) {
  if (n == 1) return leaves[0];
  const std::size_t k = split_point(n);
  return node_hash(subtree_root(leaves, k), subtree_root(leaves + k, n - k));
}

void audit_path(const Digest* leaves, std::size_t n, std::size_t m, std::vector<Digest>& out) {
  if (n == 1) return;
  const std::size_t k = split_point(n);
  if (m < k) {
    audit_path(leaves, k, m, out);
    out.push_back(subtree_root(leaves + k, n - k));
  } else {
    audit_path(leaves + k, n - k, m - k, out);
    out.push_back(subtree_root(leaves, k));
  }
}

Bytes tagged_counter(std::string_view tag, std::uint64_t i) {
  Bytes msg(tag.begin(), tag.end());
  append_u64_be(msg, i);
  return msg;
}

}  // namespace

Digest tree_root(const std::vector<Digest>& leaves) {
  if (leaves.empty()) throw Error(ErrorCode::kParameter, "tree must have at least one leaf");
  return subtree_root(leaves.data(), leaves.size());
}

Digest voucher_leaf_hash(const model::Voucher& voucher) { return leaf_hash(voucher.encode()); }

model::Voucher padding_voucher(CustomerId customer, const CycleId& cycle_id, const Digest& seed, std::uint64_t i) {
  model::Voucher v;
  v.customer = customer;
  v.domain = std::string(model::kPaddingDomain);
  v.cycle_id = cycle_id;
  v.nonce = crypto::prf(seed, tagged_counter("pad", i));
  return v;
}

std::vector<std::size_t> seeded_permutation(const Digest& seed, std::size_t n) {
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  std::uint64_t counter = 0;
  auto draw_below = [&](std::uint64_t bound) {
    const std::uint64_t limit =
        std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    for (;;) {
      const Digest block = crypto::prf(seed, tagged_counter("perm", counter++));
      const std::uint64_t v = load_u64_be(block);
      if (v < limit) return v % bound;
    }
  };
  for (std::size_t i = n; i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(draw_below(i));
    std::swap(perm[i - 1], perm[j]);
  }
  return perm;
}

PaddedMerkleTree PaddedMerkleTree::build(CustomerId customer, const CycleId& cycle_id,
                                         const std::vector<model::Voucher>& real, std::size_t size,
                                         const Digest& seed) {
  if (size == 0) throw Error(ErrorCode::kParameter, "tree size must be positive");
  if (real.size() > size) {
    throw Error(ErrorCode::kCapacity, std::to_string(real.size()) + " vouchers exceed tree size " + std::to_string(size));
  }
  std::vector<model::Voucher> unordered = real;
  for (std::uint64_t i = 0; unordered.size() < size; ++i) {
    unordered.push_back(padding_voucher(customer, cycle_id, seed, i));
  }
  const auto perm = seeded_permutation(seed, size);
  PaddedMerkleTree tree;
  tree.vouchers_.reserve(size);
  tree.leaves_.reserve(size);
  for (std::size_t i = 0; i < size; ++i) {
    tree.vouchers_.push_back(unordered[perm[i]]);
    tree.leaves_.push_back(voucher_leaf_hash(tree.vouchers_.back()));
  }
  tree.root_ = tree_root(tree.leaves_);
  return tree;
}

InclusionProof PaddedMerkleTree::prove_index(std::size_t index) const {
  if (index >= leaves_.size()) throw Error(ErrorCode::kNotFound, "leaf index out of range");
  InclusionProof proof;
  proof.leaf_index = index;
  proof.tree_size = leaves_.size();
  audit_path(leaves_.data(), leaves_.size(), index, proof.siblings);
  return proof;
}

InclusionProof PaddedMerkleTree::prove(const model::Voucher& voucher) const {
  if (voucher.is_padding()) throw Error(ErrorCode::kParameter, "padding leaves cannot be proven");
  auto it = std::find(vouchers_.begin(), vouchers_.end(), voucher);
  if (it == vouchers_.end()) throw Error(ErrorCode::kNotFound, "voucher not in tree");
  return prove_index(static_cast<std::size_t>(it - vouchers_.begin()));
}

}  // namespace ci::merkle

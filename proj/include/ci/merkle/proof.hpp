#pragma once

#include <cstdint>
#include <vector>

#include "ci/common/bytes.hpp"

namespace ci::merkle {

/// Audit path for one leaf; siblings run from the leaf level upwards. The
/// left/right direction at each level follows from (leaf_index, tree_size).
struct InclusionProof {
  std::uint64_t leaf_index = 0;
  std::uint64_t tree_size = 0;
  std::vector<Digest> siblings;

  Bytes encode() const;
  static InclusionProof decode(ByteView encoded);
  friend bool operator==(const InclusionProof&, const InclusionProof&) = default;
};

Digest leaf_hash(ByteView leaf_data);
Digest node_hash(const Digest& left, const Digest& right);

bool verify_inclusion(const Digest& root, const Digest& leaf, const InclusionProof& proof);

}  // namespace ci::merkle

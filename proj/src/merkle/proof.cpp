#include "ci/merkle/proof.hpp"

#include "ci/crypto/hash.hpp"
#include "ci/wire/tlv.hpp"

namespace ci::merkle {

using wire::Tag;

Bytes InclusionProof::encode() const {
  wire::TlvWriter path;
  for (const auto& s : siblings) path.bytes(Tag::kHash, s);
  return wire::TlvWriter()
      .u64(Tag::kIndex, leaf_index)
      .u64(Tag::kCount, tree_size)
      .raw(path.finish(Tag::kList))
      .finish(Tag::kInclusionProof);
}

InclusionProof InclusionProof::decode(ByteView encoded) {
  wire::TlvReader r(wire::open_record(encoded, Tag::kInclusionProof));
  InclusionProof p;
  p.leaf_index = r.u64(Tag::kIndex);
  p.tree_size = r.u64(Tag::kCount);
  wire::TlvReader path(r.bytes(Tag::kList));
  while (!path.at_end()) p.siblings.push_back(path.fixed<32>(Tag::kHash));
  r.expect_end();
  return p;
}

Digest leaf_hash(ByteView leaf_data) {
  const std::uint8_t prefix[1] = {0x00};
  return crypto::hash_h({prefix, leaf_data});
}

Digest node_hash(const Digest& left, const Digest& right) {
  const std::uint8_t prefix[1] = {0x01};
  return crypto::hash_h({prefix, left, right});
}

bool verify_inclusion(const Digest& root, const Digest& leaf, const InclusionProof& proof) {
  if (proof.leaf_index >= proof.tree_size) return false;
  std::uint64_t fn = proof.leaf_index;
  std::uint64_t sn = proof.tree_size - 1;
  Digest r = leaf;
  for (const Digest& p : proof.siblings) {
    if (sn == 0) return false;
    if ((fn & 1) == 1 || fn == sn) {
      r = node_hash(p, r);
      while ((fn & 1) == 0 && fn != 0) {
        fn >>= 1;
        sn >>= 1;
      }
    } else {
      r = node_hash(r, p);
    }
    fn >>= 1;
    sn >>= 1;
  }
  return sn == 0 && r == root;
}

}  // namespace ci::merkle

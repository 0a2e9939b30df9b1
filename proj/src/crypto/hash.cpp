#include "ci/crypto/hash.hpp"

#include <openssl/evp.h>

#include <memory>

#include "ci/common/error.hpp"

namespace ci::crypto {
namespace {

struct MdCtxDeleter {
  void operator()(EVP_MD_CTX* ctx) const { EVP_MD_CTX_free(ctx); }
};

class Sha256 {
 public:
  Sha256() : ctx_(EVP_MD_CTX_new()) {
    if (!ctx_ || EVP_DigestInit_ex(ctx_.get(), EVP_sha256(), nullptr) != 1) {
      throw Error(ErrorCode::kParameter, "SHA-256 init failed");
    }
  }
  void update(ByteView data) { EVP_DigestUpdate(ctx_.get(), data.data(), data.size()); }
  Digest final() {
    Digest out{};
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx_.get(), out.data(), &len);
    return out;
  }

 private:
  std::unique_ptr<EVP_MD_CTX, MdCtxDeleter> ctx_;
};

}  // namespace

Digest sha256(ByteView message) {
  Sha256 s;
  s.update(message);
  return s.final();
}

Digest hash_h(ByteView message) { return hash_h({message}); }

Digest hash_h(std::initializer_list<ByteView> parts) {
  Sha256 s;
  const std::uint8_t prefix[1] = {kHashHPrefix};
  s.update(prefix);
  for (ByteView p : parts) s.update(p);
  return s.final();
}

Digest28 hash_H28(ByteView message) {
  Sha256 s;
  const std::uint8_t prefix[1] = {kHashH28Prefix};
  s.update(prefix);
  s.update(message);
  const Digest full = s.final();
  Digest28 out{};
  std::copy_n(full.begin(), out.size(), out.begin());
  return out;
}

Digest prf(ByteView key, ByteView message) { return hash_h({key, message}); }

}  // namespace ci::crypto

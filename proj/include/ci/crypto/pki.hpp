#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "ci/common/bytes.hpp"

typedef struct evp_pkey_st EVP_PKEY;

namespace ci::crypto {

class Rng;

/// TLS 1.2 SignatureAndHashAlgorithm (hash id, signature id).
struct SignatureAlgorithm {
  std::uint8_t hash = 0;
  std::uint8_t signature = 0;
  friend bool operator==(const SignatureAlgorithm&, const SignatureAlgorithm&) = default;
};

inline constexpr SignatureAlgorithm kSigAlgRsaPkcs1Sha256{4, 1};
inline constexpr SignatureAlgorithm kSigAlgEd25519{8, 7};

enum class ServerKeyType { kEd25519, kRsa2048 };

/// Web-server signing key (Ed25519 or RSA) held as an OpenSSL EVP_PKEY.
class PrivateKey {
 public:
  static PrivateKey generate(ServerKeyType type, Rng& rng);
  static PrivateKey from_der(ByteView pkcs8_der);

  Bytes to_der() const;
  Bytes public_key_der() const;
  SignatureAlgorithm signature_algorithm() const;
  Bytes sign(ByteView message) const;

  EVP_PKEY* get() const { return key_.get(); }

 private:
  struct Deleter {
    void operator()(EVP_PKEY* k) const;
  };
  explicit PrivateKey(EVP_PKEY* k) : key_(k, Deleter{}) {}
  std::shared_ptr<EVP_PKEY> key_;
};

struct CertificateTemplate {
  std::string subject_cn;
  std::vector<std::string> dns_names;
  std::string issuer_cn = "Simulated Issuing CA";
  std::uint64_t serial = 1;
  std::int64_t not_before = 0;
  std::int64_t not_after = 0;
};

/// Issues an X.509 v3 certificate for `subject_key`, signed by `issuer_key`; returns DER.
Bytes issue_certificate(const CertificateTemplate& tmpl, const PrivateKey& subject_key, const PrivateKey& issuer_key);

/// DNS identities of a certificate: SAN dNSName entries, or the subject CN when
/// the certificate carries none. Throws ErrorCode::kParse on malformed DER.
std::vector<std::string> certificate_identities(ByteView cert_der);

/// ASCII case-insensitive exact match of `domain` against certificate_identities.
bool certificate_matches_domain(ByteView cert_der, std::string_view domain);

/// Verifies `signature` over `message` with the certificate's subject key under
/// the given TLS algorithm. Any parse failure or algorithm/key mismatch rejects.
bool verify_with_certificate(ByteView cert_der, SignatureAlgorithm alg, ByteView message, ByteView signature);

}  // namespace ci::crypto

#pragma once

#include <string>

#include "ci/crypto/bignum.hpp"
#include "ci/crypto/group.hpp"
#include "ci/crypto/pki.hpp"
#include "ci/model/evidence.hpp"
#include "ci/model/voucher.hpp"
#include "ci/tls/transcript.hpp"

namespace ci::tls {

/// ClientHello.random: 4-byte BE gmt_unix_time || H28(encode(voucher)).
Random client_hello(const model::Voucher& voucher, std::uint64_t now);

/// ServerDHParams with each value a 2-byte BE length-prefixed minimal big-endian vector.
Bytes encode_server_dh_params(const crypto::BigNum& p, const crypto::BigNum& g, const crypto::BigNum& ys);

enum class ServerBehavior { kHonest, kMitm };

/// Issues simulated web-server certificates.
class SimCertificateAuthority {
 public:
  SimCertificateAuthority(std::string name, crypto::PrivateKey key) : name_(std::move(name)), key_(std::move(key)) {}
  static SimCertificateAuthority create(std::string name, crypto::Rng& rng);

  Bytes issue(const std::string& domain, const crypto::PrivateKey& subject_key, std::uint64_t serial,
              std::uint64_t now) const;

 private:
  std::string name_;
  crypto::PrivateKey key_;
};

/// Stand-in for a web server that runs the DHE part of a TLS 1.2 handshake.
class SimServer {
 public:
  SimServer(std::string domain, Bytes certificate, crypto::PrivateKey key,
            ServerBehavior behavior = ServerBehavior::kHonest);

  static SimServer create(const std::string& domain, const SimCertificateAuthority& ca, crypto::Rng& rng,
                          std::uint64_t serial, std::uint64_t now,
                          crypto::ServerKeyType key_type = crypto::ServerKeyType::kEd25519);

  /// A man in the middle presenting a certificate for `impersonated_domain`
  /// whose private key it controls.
  static SimServer mitm(const std::string& impersonated_domain, Bytes rogue_certificate,
                        crypto::PrivateKey attacker_key);

  const std::string& domain() const { return domain_; }
  const Bytes& certificate() const { return certificate_; }
  ServerBehavior behavior() const { return behavior_; }
  const crypto::PrivateKey& key() const { return key_; }

  struct Reply {
    Bytes certificate;
    HandshakeTranscript transcript;
  };
  Reply handshake(const Random& client_random, crypto::Rng& rng) const;

  Bytes encode() const;
  static SimServer decode(ByteView encoded);

 private:
  std::string domain_;
  Bytes certificate_;
  crypto::PrivateKey key_;
  ServerBehavior behavior_;
};

/// Signs client_random || server_random || ServerDHParams(p, g, g^dh_secret).
HandshakeTranscript server_key_exchange(const crypto::PrivateKey& server_key, const crypto::GroupParams& dh_group,
                                        const Random& client_random, const Random& server_random,
                                        const crypto::BigNum& dh_secret);

/// Throws ErrorCode::kEvidenceRejected when client_random does not embed
/// H28(voucher) or the signature does not verify under `presented_cert`.
model::VoucherEvidence extract_evidence(const HandshakeTranscript& transcript, const model::Voucher& voucher,
                                        const Bytes& presented_cert);

}  // namespace ci::tls

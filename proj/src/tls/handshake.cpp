#include "ci/tls/handshake.hpp"

#include <algorithm>

#include "ci/common/error.hpp"
#include "ci/crypto/hash.hpp"
#include "ci/crypto/random.hpp"
#include "ci/wire/tlv.hpp"

namespace ci::tls {

using wire::Tag;

namespace {

constexpr std::uint64_t kCertificateLifetime = 90 * 86400;

void append_vector16(Bytes& out, ByteView v) {
  if (v.empty() || v.size() > 0xffff) throw Error(ErrorCode::kEncoding, "DH parameter length out of range");
  append_u16_be(out, static_cast<std::uint16_t>(v.size()));
  append(out, v);
}

}  // namespace

Random client_hello(const model::Voucher& voucher, std::uint64_t now) {
  Random out{};
  const auto gmt = static_cast<std::uint32_t>(now);
  out[0] = static_cast<std::uint8_t>(gmt >> 24);
  out[1] = static_cast<std::uint8_t>(gmt >> 16);
  out[2] = static_cast<std::uint8_t>(gmt >> 8);
  out[3] = static_cast<std::uint8_t>(gmt);
  const crypto::Digest28 h = crypto::hash_H28(voucher.encode());
  std::copy(h.begin(), h.end(), out.begin() + 4);
  return out;
}

Bytes encode_server_dh_params(const crypto::BigNum& p, const crypto::BigNum& g, const crypto::BigNum& ys) {
  Bytes out;
  append_vector16(out, p.to_bytes_minimal());
  append_vector16(out, g.to_bytes_minimal());
  append_vector16(out, ys.to_bytes_minimal());
  return out;
}

SimCertificateAuthority SimCertificateAuthority::create(std::string name, crypto::Rng& rng) {
  return {std::move(name), crypto::PrivateKey::generate(crypto::ServerKeyType::kEd25519, rng)};
}

Bytes SimCertificateAuthority::issue(const std::string& domain, const crypto::PrivateKey& subject_key,
                                     std::uint64_t serial, std::uint64_t now) const {
  crypto::CertificateTemplate tmpl;
  tmpl.subject_cn = domain;
  tmpl.dns_names = {domain};
  tmpl.issuer_cn = name_;
  tmpl.serial = serial;
  tmpl.not_before = static_cast<std::int64_t>(now);
  tmpl.not_after = static_cast<std::int64_t>(now + kCertificateLifetime);
  return crypto::issue_certificate(tmpl, subject_key, key_);
}

SimServer::SimServer(std::string domain, Bytes certificate, crypto::PrivateKey key, ServerBehavior behavior)
    : domain_(std::move(domain)), certificate_(std::move(certificate)), key_(std::move(key)), behavior_(behavior) {}

SimServer SimServer::create(const std::string& domain, const SimCertificateAuthority& ca, crypto::Rng& rng,
                            std::uint64_t serial, std::uint64_t now, crypto::ServerKeyType key_type) {
  auto key = crypto::PrivateKey::generate(key_type, rng);
  Bytes cert = ca.issue(domain, key, serial, now);
  return {domain, std::move(cert), std::move(key), ServerBehavior::kHonest};
}

SimServer SimServer::mitm(const std::string& impersonated_domain, Bytes rogue_certificate,
                          crypto::PrivateKey attacker_key) {
  return {impersonated_domain, std::move(rogue_certificate), std::move(attacker_key), ServerBehavior::kMitm};
}

SimServer::Reply SimServer::handshake(const Random& client_random, crypto::Rng& rng) const {
  const auto& group = crypto::production_group();
  const Random server_random = rng.array<32>();
  crypto::BigNum secret;
  do {
    secret = crypto::random_below(rng, group.q);
  } while (secret.is_zero());
  return {certificate_, server_key_exchange(key_, group, client_random, server_random, secret)};
}

Bytes SimServer::encode() const {
  return wire::TlvWriter()
      .str(Tag::kDomain, domain_)
      .bytes(Tag::kCertDer, certificate_)
      .bytes(Tag::kPrivateKeyDer, key_.to_der())
      .u8(Tag::kFlag, behavior_ == ServerBehavior::kMitm ? 1 : 0)
      .finish(Tag::kServerIdentity);
}

SimServer SimServer::decode(ByteView encoded) {
  wire::TlvReader r(wire::open_record(encoded, Tag::kServerIdentity));
  std::string domain = r.str(Tag::kDomain);
  const ByteView cert = r.bytes(Tag::kCertDer);
  auto key = crypto::PrivateKey::from_der(r.bytes(Tag::kPrivateKeyDer));
  const auto behavior = r.u8(Tag::kFlag) ? ServerBehavior::kMitm : ServerBehavior::kHonest;
  r.expect_end();
  return {std::move(domain), Bytes(cert.begin(), cert.end()), std::move(key), behavior};
}

HandshakeTranscript server_key_exchange(const crypto::PrivateKey& server_key, const crypto::GroupParams& dh_group,
                                        const Random& client_random, const Random& server_random,
                                        const crypto::BigNum& dh_secret) {
  HandshakeTranscript t;
  t.client_random = client_random;
  t.server_random = server_random;
  const crypto::BigNum ys = crypto::mod_exp_secret(dh_group.g, dh_secret, dh_group.p);
  t.server_dh_params = encode_server_dh_params(dh_group.p, dh_group.g, ys);
  t.sig_alg = server_key.signature_algorithm();
  t.signature = server_key.sign(t.signed_params_input());
  return t;
}

model::VoucherEvidence extract_evidence(const HandshakeTranscript& transcript, const model::Voucher& voucher,
                                        const Bytes& presented_cert) {
  if (!model::embeds_voucher(transcript, voucher)) {
    throw Error(ErrorCode::kEvidenceRejected, "client_random does not embed H28(voucher)");
  }
  if (!crypto::verify_with_certificate(presented_cert, transcript.sig_alg, transcript.signed_params_input(),
                                       transcript.signature)) {
    throw Error(ErrorCode::kEvidenceRejected, "server signature over signed_params does not verify");
  }
  return {presented_cert, voucher, transcript};
}

}  // namespace ci::tls

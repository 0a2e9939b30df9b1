#include "ci/crypto/pki.hpp"

#include <openssl/evp.h>
#include <openssl/rsa.h>
#include <openssl/x509.h>
#include <openssl/x509v3.h>

#include <algorithm>
#include <cctype>

#include "ci/common/error.hpp"
#include "ci/crypto/random.hpp"

namespace ci::crypto {
namespace {

template <typename T, void (*F)(T*)>
struct Free {
  void operator()(T* p) const { F(p); }
};
using X509Ptr = std::unique_ptr<X509, Free<X509, X509_free>>;
using PkeyPtr = std::unique_ptr<EVP_PKEY, Free<EVP_PKEY, EVP_PKEY_free>>;
using MdCtxPtr = std::unique_ptr<EVP_MD_CTX, Free<EVP_MD_CTX, EVP_MD_CTX_free>>;
using PkeyCtxPtr = std::unique_ptr<EVP_PKEY_CTX, Free<EVP_PKEY_CTX, EVP_PKEY_CTX_free>>;
using NamesPtr = std::unique_ptr<GENERAL_NAMES, Free<GENERAL_NAMES, GENERAL_NAMES_free>>;
using ExtPtr = std::unique_ptr<X509_EXTENSION, Free<X509_EXTENSION, X509_EXTENSION_free>>;

X509Ptr parse_cert(ByteView der) {
  const unsigned char* p = der.data();
  X509Ptr cert(d2i_X509(nullptr, &p, static_cast<long>(der.size())));
  if (!cert || p != der.data() + der.size()) throw Error(ErrorCode::kParse, "malformed certificate DER");
  return cert;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

bool sign_digest_algorithm(SignatureAlgorithm alg, const EVP_MD** md) {
  if (alg == kSigAlgEd25519) {
    *md = nullptr;
    return true;
  }
  if (alg == kSigAlgRsaPkcs1Sha256) {
    *md = EVP_sha256();
    return true;
  }
  return false;
}

}  // namespace

void PrivateKey::Deleter::operator()(EVP_PKEY* k) const { EVP_PKEY_free(k); }

PrivateKey PrivateKey::generate(ServerKeyType type, Rng& rng) {
  if (type == ServerKeyType::kEd25519) {
    const Bytes seed = rng.bytes(32);
    EVP_PKEY* k = EVP_PKEY_new_raw_private_key(EVP_PKEY_ED25519, nullptr, seed.data(), seed.size());
    if (!k) throw Error(ErrorCode::kKeyFormat, "Ed25519 server key generation failed");
    return PrivateKey(k);
  }
  // RSA key generation draws from the OpenSSL DRBG; it is not reproducible from `rng`.
  PkeyCtxPtr ctx(EVP_PKEY_CTX_new_id(EVP_PKEY_RSA, nullptr));
  EVP_PKEY* k = nullptr;
  if (!ctx || EVP_PKEY_keygen_init(ctx.get()) != 1 || EVP_PKEY_CTX_set_rsa_keygen_bits(ctx.get(), 2048) != 1 ||
      EVP_PKEY_keygen(ctx.get(), &k) != 1) {
    throw Error(ErrorCode::kKeyFormat, "RSA server key generation failed");
  }
  return PrivateKey(k);
}

PrivateKey PrivateKey::from_der(ByteView pkcs8_der) {
  const unsigned char* p = pkcs8_der.data();
  EVP_PKEY* k = d2i_AutoPrivateKey(nullptr, &p, static_cast<long>(pkcs8_der.size()));
  if (!k) throw Error(ErrorCode::kKeyFormat, "malformed private key DER");
  return PrivateKey(k);
}

Bytes PrivateKey::to_der() const {
  unsigned char* out = nullptr;
  const int len = i2d_PrivateKey(key_.get(), &out);
  if (len <= 0) throw Error(ErrorCode::kKeyFormat, "private key serialization failed");
  Bytes der(out, out + len);
  OPENSSL_free(out);
  return der;
}

Bytes PrivateKey::public_key_der() const {
  unsigned char* out = nullptr;
  const int len = i2d_PUBKEY(key_.get(), &out);
  if (len <= 0) throw Error(ErrorCode::kKeyFormat, "public key serialization failed");
  Bytes der(out, out + len);
  OPENSSL_free(out);
  return der;
}

SignatureAlgorithm PrivateKey::signature_algorithm() const {
  switch (EVP_PKEY_get_base_id(key_.get())) {
    case EVP_PKEY_ED25519: return kSigAlgEd25519;
    case EVP_PKEY_RSA: return kSigAlgRsaPkcs1Sha256;
    default: throw Error(ErrorCode::kKeyFormat, "unsupported server key type");
  }
}

Bytes PrivateKey::sign(ByteView message) const {
  const EVP_MD* md = nullptr;
  sign_digest_algorithm(signature_algorithm(), &md);
  MdCtxPtr ctx(EVP_MD_CTX_new());
  if (!ctx || EVP_DigestSignInit(ctx.get(), nullptr, md, nullptr, key_.get()) != 1) {
    throw Error(ErrorCode::kKeyFormat, "server sign init failed");
  }
  std::size_t len = 0;
  if (EVP_DigestSign(ctx.get(), nullptr, &len, message.data(), message.size()) != 1) {
    throw Error(ErrorCode::kKeyFormat, "server sign sizing failed");
  }
  Bytes sig(len);
  if (EVP_DigestSign(ctx.get(), sig.data(), &len, message.data(), message.size()) != 1) {
    throw Error(ErrorCode::kKeyFormat, "server signing failed");
  }
  sig.resize(len);
  return sig;
}

Bytes issue_certificate(const CertificateTemplate& tmpl, const PrivateKey& subject_key, const PrivateKey& issuer_key) {
  X509Ptr cert(X509_new());
  if (!cert) throw Error(ErrorCode::kEncoding, "X509_new failed");
  X509_set_version(cert.get(), 2);
  ASN1_INTEGER_set_uint64(X509_get_serialNumber(cert.get()), tmpl.serial);
  ASN1_TIME_set(X509_getm_notBefore(cert.get()), static_cast<time_t>(tmpl.not_before));
  ASN1_TIME_set(X509_getm_notAfter(cert.get()), static_cast<time_t>(tmpl.not_after));
  X509_set_pubkey(cert.get(), subject_key.get());

  X509_NAME* subject = X509_get_subject_name(cert.get());
  X509_NAME_add_entry_by_txt(subject, "CN", MBSTRING_UTF8,
                             reinterpret_cast<const unsigned char*>(tmpl.subject_cn.c_str()), -1, -1, 0);
  X509_NAME* issuer = X509_NAME_new();
  X509_NAME_add_entry_by_txt(issuer, "CN", MBSTRING_UTF8,
                             reinterpret_cast<const unsigned char*>(tmpl.issuer_cn.c_str()), -1, -1, 0);
  X509_set_issuer_name(cert.get(), issuer);
  X509_NAME_free(issuer);

  if (!tmpl.dns_names.empty()) {
    NamesPtr names(sk_GENERAL_NAME_new_null());
    for (const auto& dns : tmpl.dns_names) {
      GENERAL_NAME* gn = GENERAL_NAME_new();
      ASN1_IA5STRING* ia5 = ASN1_IA5STRING_new();
      ASN1_STRING_set(ia5, dns.data(), static_cast<int>(dns.size()));
      GENERAL_NAME_set0_value(gn, GEN_DNS, ia5);
      sk_GENERAL_NAME_push(names.get(), gn);
    }
    ExtPtr ext(X509V3_EXT_i2d(NID_subject_alt_name, 0, names.get()));
    if (!ext || X509_add_ext(cert.get(), ext.get(), -1) != 1) {
      throw Error(ErrorCode::kEncoding, "cannot add subjectAltName");
    }
  }

  const EVP_MD* md = nullptr;
  sign_digest_algorithm(issuer_key.signature_algorithm(), &md);
  if (X509_sign(cert.get(), issuer_key.get(), md) <= 0) throw Error(ErrorCode::kEncoding, "certificate signing failed");

  unsigned char* out = nullptr;
  const int len = i2d_X509(cert.get(), &out);
  if (len <= 0) throw Error(ErrorCode::kEncoding, "certificate serialization failed");
  Bytes der(out, out + len);
  OPENSSL_free(out);
  return der;
}

std::vector<std::string> certificate_identities(ByteView cert_der) {
  X509Ptr cert = parse_cert(cert_der);
  std::vector<std::string> out;
  NamesPtr names(static_cast<GENERAL_NAMES*>(X509_get_ext_d2i(cert.get(), NID_subject_alt_name, nullptr, nullptr)));
  if (names) {
    for (int i = 0; i < sk_GENERAL_NAME_num(names.get()); ++i) {
      const GENERAL_NAME* gn = sk_GENERAL_NAME_value(names.get(), i);
      if (gn->type != GEN_DNS) continue;
      const ASN1_IA5STRING* s = gn->d.dNSName;
      out.emplace_back(reinterpret_cast<const char*>(ASN1_STRING_get0_data(s)), ASN1_STRING_length(s));
    }
  }
  if (!out.empty()) return out;
  const X509_NAME* subject = X509_get_subject_name(cert.get());
  for (int idx = X509_NAME_get_index_by_NID(subject, NID_commonName, -1); idx >= 0;
       idx = X509_NAME_get_index_by_NID(subject, NID_commonName, idx)) {
    const ASN1_STRING* s = X509_NAME_ENTRY_get_data(X509_NAME_get_entry(subject, idx));
    out.emplace_back(reinterpret_cast<const char*>(ASN1_STRING_get0_data(s)), ASN1_STRING_length(s));
  }
  return out;
}

bool certificate_matches_domain(ByteView cert_der, std::string_view domain) {
  const std::string want = lower(domain);
  for (const auto& id : certificate_identities(cert_der)) {
    if (id.find('\0') != std::string::npos) continue;
    if (lower(id) == want) return true;
  }
  return false;
}

bool verify_with_certificate(ByteView cert_der, SignatureAlgorithm alg, ByteView message, ByteView signature) {
  X509Ptr cert;
  try {
    cert = parse_cert(cert_der);
  } catch (const Error&) {
    return false;
  }
  PkeyPtr key(X509_get_pubkey(cert.get()));
  if (!key) return false;
  const int type = EVP_PKEY_get_base_id(key.get());
  if ((alg == kSigAlgEd25519 && type != EVP_PKEY_ED25519) || (alg == kSigAlgRsaPkcs1Sha256 && type != EVP_PKEY_RSA)) {
    return false;
  }
  const EVP_MD* md = nullptr;
  if (!sign_digest_algorithm(alg, &md)) return false;
  MdCtxPtr ctx(EVP_MD_CTX_new());
  if (!ctx || EVP_DigestVerifyInit(ctx.get(), nullptr, md, nullptr, key.get()) != 1) return false;
  return EVP_DigestVerify(ctx.get(), signature.data(), signature.size(), message.data(), message.size()) == 1;
}

}  // namespace ci::crypto

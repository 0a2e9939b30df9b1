#include "ci/judge/judge.hpp"

#include "ci/crypto/pki.hpp"
#include "ci/merkle/tree.hpp"

namespace ci::judge {

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::kAccept: return "ACCEPT";
    case Verdict::kBadContract: return "BAD_CONTRACT";
    case Verdict::kBadCertSig: return "BAD_CERT_SIG";
    case Verdict::kCertNotInList: return "CERT_NOT_IN_LIST";
    case Verdict::kBadVoucherSig: return "BAD_VOUCHER_SIG";
    case Verdict::kUpdateLate: return "UPDATE_LATE";
    case Verdict::kBadMerklePath: return "BAD_MERKLE_PATH";
    case Verdict::kVoucherMismatch: return "VOUCHER_MISMATCH";
    case Verdict::kBadTlsSig: return "BAD_TLS_SIG";
    case Verdict::kDomainMismatch: return "DOMAIN_MISMATCH";
    case Verdict::kOutsideTerm: return "OUTSIDE_TERM";
    case Verdict::kNotRogue: return "NOT_ROGUE";
  }
  return "UNKNOWN";
}

int verdict_exit_code(Verdict v) {
  switch (v) {
    case Verdict::kAccept: return 0;
    case Verdict::kBadContract: return 10;
    case Verdict::kBadCertSig: return 11;
    case Verdict::kCertNotInList: return 12;
    case Verdict::kBadVoucherSig: return 13;
    case Verdict::kUpdateLate: return 14;
    case Verdict::kBadMerklePath: return 15;
    case Verdict::kVoucherMismatch: return 16;
    case Verdict::kBadTlsSig: return 17;
    case Verdict::kDomainMismatch: return 18;
    case Verdict::kOutsideTerm: return 19;
    case Verdict::kNotRogue: return 20;
  }
  return 9;
}

namespace {

bool signature_holds(const model::Contract& contract, ByteView payload, const crypto::ChameleonSignature& sig,
                     std::string_view label) {
  const crypto::SignatureContext ctx{contract.customer, std::string(label)};
  try {
    return crypto::chameleon_verify(contract.insurer_key, contract.chameleon_key, payload, sig, ctx);
  } catch (const Error&) {
    return false;
  }
}

}  // namespace

Verdict verify_claim(const model::Claim& claim, const crypto::SigPublicKey& insurer_key, bool rogue_asserted) {
  const model::Contract& contract = claim.contract;
  const model::CycleEvidence& cycle = claim.cycle;
  try {
    if (!model::contract_is_valid(contract, insurer_key)) return Verdict::kBadContract;
  } catch (const Error&) {
    return Verdict::kBadContract;
  }

  // (1) the insurer vouched for Cert_Bob at time t.
  if (cycle.certificates.empty()) return Verdict::kBadCertSig;
  if (!signature_holds(contract, model::certificates_payload(contract.customer, cycle), cycle.certs_signature,
                       wire::kLabelCertificates)) {
    return Verdict::kBadCertSig;
  }
  if (cycle.downloaded_at < contract.valid_from || cycle.downloaded_at >= contract.valid_until) {
    return Verdict::kOutsideTerm;
  }
  if (claim.cert_index >= cycle.certificates.size() ||
      cycle.certificates[claim.cert_index] != claim.evidence.certificate) {
    return Verdict::kCertNotInList;
  }

  // (2) the voucher root was submitted in the same cycle, on time.
  if (!signature_holds(contract, model::vouchers_payload(contract.customer, cycle), cycle.vouchers_signature,
                       wire::kLabelVouchers)) {
    return Verdict::kBadVoucherSig;
  }
  if (!model::update_was_timely(cycle.downloaded_at, cycle.submitted_at, contract.max_update_interval)) {
    return Verdict::kUpdateLate;
  }

  // (3) the connection happened inside that cycle with Cert_Bob's key.
  const model::Voucher& v = claim.evidence.voucher;
  if (v.customer != contract.customer || v.cycle_id != cycle.cycle_id || v.is_padding()) {
    return Verdict::kVoucherMismatch;
  }
  if (claim.inclusion.tree_size != cycle.certificates.size() ||
      !merkle::verify_inclusion(cycle.voucher_root, merkle::voucher_leaf_hash(v), claim.inclusion)) {
    return Verdict::kBadMerklePath;
  }
  const auto& t = claim.evidence.transcript;
  if (!model::embeds_voucher(t, v)) return Verdict::kVoucherMismatch;
  if (!crypto::verify_with_certificate(claim.evidence.certificate, t.sig_alg, t.signed_params_input(),
                                       t.signature)) {
    return Verdict::kBadTlsSig;
  }
  if (!crypto::certificate_matches_domain(claim.evidence.certificate, v.domain)) return Verdict::kDomainMismatch;

  return rogue_asserted ? Verdict::kAccept : Verdict::kNotRogue;
}

Verdict verify_claim_bytes(ByteView claim, const crypto::SigPublicKey& insurer_key, bool rogue_asserted) {
  model::Claim parsed;
  try {
    parsed = model::Claim::decode(claim);
  } catch (const Error& e) {
    throw Error(ErrorCode::kParse, std::string("malformed claim: ") + e.what());
  }
  return verify_claim(parsed, insurer_key, rogue_asserted);
}

std::string_view ruling_name(Ruling r) {
  return r == Ruling::kCustomerForged ? "CUSTOMER_FORGED" : "INSURER_BOUND";
}

Ruling resolve_denial(const model::Contract& contract, ByteView message,
                      const crypto::ChameleonSignature& signature,
                      const std::optional<insurer::ChameleonRecord>& record) {
  if (!model::contract_is_valid(contract, contract.insurer_key)) {
    throw Error(ErrorCode::kBadSignature, "contract does not verify under its insurer key");
  }
  const crypto::SignatureContext& ctx = signature.context;
  if (ctx.customer != contract.customer ||
      !crypto::chameleon_verify(contract.insurer_key, contract.chameleon_key, message, signature, ctx)) {
    throw Error(ErrorCode::kBadSignature, "disputed chameleon signature does not verify");
  }
  if (!record) return Ruling::kInsurerBound;
  const crypto::BigNum disputed = crypto::chameleon_hash(contract.chameleon_key, message, signature.randomizer);
  // A record only counts if it is itself a genuine opening of the same hash.
  const bool same_hash =
      record->randomizer < contract.chameleon_key.params.q &&
      crypto::chameleon_hash(contract.chameleon_key, record->message, record->randomizer) == disputed &&
      record->chameleon_value == disputed;
  const bool differs = record->message != Bytes(message.begin(), message.end());
  return same_hash && differs ? Ruling::kCustomerForged : Ruling::kInsurerBound;
}

}  // namespace ci::judge

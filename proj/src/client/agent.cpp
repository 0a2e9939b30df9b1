#include "ci/client/agent.hpp"

#include <algorithm>

#include "ci/common/error.hpp"
#include "ci/common/io.hpp"
#include "ci/crypto/pki.hpp"
#include "ci/merkle/tree.hpp"
#include "ci/wire/tlv.hpp"

namespace ci::client {

using wire::Tag;

namespace {

constexpr const char* kStateFile = "state.tlv";
constexpr const char* kArchiveFile = "archive.tlv";

Bytes encode_evidence_list(const std::vector<model::VoucherEvidence>& evidence) {
  wire::TlvWriter w;
  for (const auto& e : evidence) w.raw(e.encode());
  return w.finish(Tag::kList);
}

std::vector<model::VoucherEvidence> decode_evidence_list(ByteView encoded) {
  wire::TlvReader r(wire::open_record(encoded, Tag::kList));
  std::vector<model::VoucherEvidence> out;
  while (!r.at_end()) {
    auto e = model::VoucherEvidence::decode(r.element(Tag::kVoucherEvidence));
    if (!model::evidence_is_valid(e)) throw Error(ErrorCode::kCorruption, "stored voucher evidence is invalid");
    out.push_back(std::move(e));
  }
  return out;
}

Bytes encode_open_cycle(const OpenCycle& c, const crypto::GroupParams& params) {
  std::vector<model::VoucherEvidence> evidence;
  for (const auto& [domain, e] : c.vouchers) evidence.push_back(e);
  return wire::TlvWriter()
      .u64(Tag::kIndex, c.index)
      .bytes(Tag::kCycleId, c.cycle_id.bytes)
      .u64(Tag::kTimestamp, c.downloaded_at)
      .raw(c.certs_signature.encode(params))
      .raw(encode_evidence_list(evidence))
      .finish(Tag::kOpenCycle);
}

OpenCycle decode_open_cycle(ByteView encoded) {
  wire::TlvReader r(wire::open_record(encoded, Tag::kOpenCycle));
  OpenCycle c;
  c.index = r.u64(Tag::kIndex);
  c.cycle_id.bytes = r.fixed<32>(Tag::kCycleId);
  c.downloaded_at = r.u64(Tag::kTimestamp);
  c.certs_signature = crypto::ChameleonSignature::decode(r.element(Tag::kChameleonSignature));
  for (auto& e : decode_evidence_list(r.element(Tag::kList))) {
    const std::string domain = e.voucher.domain;
    c.vouchers.emplace(domain, std::move(e));
  }
  r.expect_end();
  return c;
}

Bytes encode_archived(const ArchivedCycle& c, const crypto::GroupParams& params) {
  return wire::TlvWriter()
      .u64(Tag::kIndex, c.index)
      .bytes(Tag::kCycleId, c.cycle_id.bytes)
      .bytes(Tag::kHash, c.cert_digest)
      .u64(Tag::kCount, c.list_size)
      .u64(Tag::kTimestamp, c.downloaded_at)
      .u64(Tag::kTimestamp, c.submitted_at)
      .raw(c.certs_signature.encode(params))
      .raw(c.vouchers_signature.encode(params))
      .bytes(Tag::kSeed, c.tree_seed)
      .bytes(Tag::kHash, c.voucher_root)
      .u8(Tag::kFlag, c.covered ? 1 : 0)
      .u8(Tag::kFlag, c.insurer_covered ? 1 : 0)
      .raw(encode_evidence_list(c.evidence))
      .finish(Tag::kArchiveEntry);
}

ArchivedCycle decode_archived(ByteView encoded) {
  wire::TlvReader r(wire::open_record(encoded, Tag::kArchiveEntry));
  ArchivedCycle c;
  c.index = r.u64(Tag::kIndex);
  c.cycle_id.bytes = r.fixed<32>(Tag::kCycleId);
  c.cert_digest = r.fixed<32>(Tag::kHash);
  c.list_size = r.u64(Tag::kCount);
  c.downloaded_at = r.u64(Tag::kTimestamp);
  c.submitted_at = r.u64(Tag::kTimestamp);
  c.certs_signature = crypto::ChameleonSignature::decode(r.element(Tag::kChameleonSignature));
  c.vouchers_signature = crypto::ChameleonSignature::decode(r.element(Tag::kChameleonSignature));
  c.tree_seed = r.fixed<32>(Tag::kSeed);
  c.voucher_root = r.fixed<32>(Tag::kHash);
  c.covered = r.u8(Tag::kFlag) != 0;
  c.insurer_covered = r.u8(Tag::kFlag) != 0;
  c.evidence = decode_evidence_list(r.element(Tag::kList));
  r.expect_end();
  return c;
}

}  // namespace

std::string_view browse_status_name(BrowseStatus status) {
  switch (status) {
    case BrowseStatus::kVouched: return "vouched";
    case BrowseStatus::kReused: return "reused";
    case BrowseStatus::kUntrusted: return "untrusted";
    case BrowseStatus::kHostnameMismatch: return "hostname-mismatch";
  }
  return "unknown";
}

ClientAgent::ClientAgent(crypto::SigKeyPair keys, crypto::ChameleonKeyPair chameleon, crypto::Rng& rng)
    : keys_(std::move(keys)), chameleon_(std::move(chameleon)), rng_(&rng) {}

ClientAgent::ClientAgent(ClientAgent&& other) noexcept
    : keys_(std::move(other.keys_)),
      chameleon_(std::move(other.chameleon_)),
      rng_(other.rng_),
      contract_(std::move(other.contract_)),
      current_(std::move(other.current_)),
      current_index_(other.current_index_),
      rollbacks_(std::move(other.rollbacks_)),
      open_(std::move(other.open_)),
      archive_(std::move(other.archive_)) {}

ClientAgent ClientAgent::create(crypto::Rng& rng, const crypto::GroupParams& group) {
  auto keys = crypto::generate_sig_keypair(rng);
  auto chameleon = crypto::ChameleonKeyPair::generate(group, rng);
  return {std::move(keys), std::move(chameleon), rng};
}

const model::Contract& ClientAgent::contract() const {
  if (!contract_) throw Error(ErrorCode::kRegistration, "client is not registered");
  return *contract_;
}

const model::Contract& ClientAgent::register_with(insurer::InsurerStub& insurer,
                                                  const crypto::SigPublicKey& insurer_key,
                                                  std::uint64_t requested_interval) {
  std::lock_guard lock(mu_);
  if (contract_) throw Error(ErrorCode::kRegistration, "client already holds a contract");
  const auto pk = keys_.public_part();
  insurer::RegisterRequest req;
  req.customer_key = pk;
  req.chameleon_key = chameleon_.public_key;
  req.trapdoor_proof =
      crypto::prove_trapdoor(chameleon_, model::registration_context(insurer_key, pk, chameleon_.public_key), *rng_);
  req.max_update_interval = requested_interval;
  model::Contract c = insurer.register_customer(req);
  if (!model::contract_is_valid(c, insurer_key) || !(c.customer_key == pk) ||
      !(c.chameleon_key == chameleon_.public_key)) {
    throw Error(ErrorCode::kBadSignature, "contract returned by the insurer does not verify");
  }
  contract_ = std::move(c);
  return *contract_;
}

const OpenCycle& ClientAgent::do_update_cycle(insurer::InsurerStub& insurer, std::uint64_t now) {
  std::lock_guard lock(mu_);
  const model::Contract& c = contract();
  if (open_) throw Error(ErrorCode::kSequencing, "previous cycle has not been submitted");

  insurer::CycleOffer offer = insurer.begin_cycle(c.customer);
  const Bytes payload = wire::encode_signed_payload(wire::kLabelCertificates, c.customer, offer.cycle_id, now,
                                                    wire::cert_list_digest(offer.certificates));
  const Bytes sig = crypto::sign(keys_, payload);
  auto chsig = insurer.ack_certificates({c.customer, offer.cycle_id, now, sig});
  const crypto::SignatureContext ctx{c.customer, std::string(wire::kLabelCertificates)};
  if (!crypto::chameleon_verify(c.insurer_key, chameleon_.public_key, payload, chsig, ctx)) {
    throw Error(ErrorCode::kBadSignature, "insurer signature over the certificate list does not verify");
  }

  const std::uint64_t index = current_index_ ? *current_index_ + 1 : 0;
  if (current_index_) {
    const std::uint64_t previous_t = archive_.empty() ? 0 : archive_.back().downloaded_at;
    rollbacks_.push_back(model::diff_cert_lists(current_, offer.certificates, index, previous_t));
  }
  current_ = std::move(offer.certificates);
  current_index_ = index;
  open_ = OpenCycle{index, offer.cycle_id, now, std::move(chsig), {}};
  return *open_;
}

BrowseResult ClientAgent::browse(const std::string& domain, const tls::SimServer& server, std::uint64_t now) {
  std::lock_guard lock(mu_);
  if (!open_) throw Error(ErrorCode::kSequencing, "no open cycle");
  if (auto it = open_->vouchers.find(domain); it != open_->vouchers.end()) {
    return {BrowseStatus::kReused, it->second, {}};
  }
  const Bytes& presented = server.certificate();
  if (std::find(current_.begin(), current_.end(), presented) == current_.end()) {
    return {BrowseStatus::kUntrusted, std::nullopt, "certificate presented for " + domain + " is not on the insured list"};
  }
  if (!crypto::certificate_matches_domain(presented, domain)) {
    return {BrowseStatus::kHostnameMismatch, std::nullopt, "certificate does not name " + domain};
  }
  model::Voucher v{contract().customer, domain, open_->cycle_id, rng_->array<32>()};
  const tls::Random client_random = tls::client_hello(v, now);
  tls::SimServer::Reply reply = server.handshake(client_random, *rng_);
  if (reply.certificate != presented) throw Error(ErrorCode::kNetwork, "server changed certificate mid-handshake");
  auto evidence = tls::extract_evidence(reply.transcript, v, reply.certificate);
  open_->vouchers.emplace(domain, evidence);
  return {BrowseStatus::kVouched, std::move(evidence), {}};
}

const ArchivedCycle& ClientAgent::submit_cycle(insurer::InsurerStub& insurer, std::uint64_t now) {
  std::lock_guard lock(mu_);
  const model::Contract& c = contract();
  if (!open_) throw Error(ErrorCode::kSequencing, "no open cycle to submit");

  std::vector<model::Voucher> vouchers;
  std::vector<model::VoucherEvidence> evidence;
  for (const auto& [domain, e] : open_->vouchers) {
    vouchers.push_back(e.voucher);
    evidence.push_back(e);
  }
  const Digest seed = rng_->array<32>();
  const auto tree = merkle::PaddedMerkleTree::build(c.customer, open_->cycle_id, vouchers, current_.size(), seed);
  const Bytes payload =
      wire::encode_signed_payload(wire::kLabelVouchers, c.customer, open_->cycle_id, now, tree.root());
  const Bytes sig = crypto::sign(keys_, payload);
  auto result = insurer.submit_vouchers({c.customer, open_->cycle_id, now, tree.root(), sig});
  const crypto::SignatureContext ctx{c.customer, std::string(wire::kLabelVouchers)};
  if (!crypto::chameleon_verify(c.insurer_key, chameleon_.public_key, payload, result.signature, ctx)) {
    throw Error(ErrorCode::kBadSignature, "insurer countersignature over the voucher root does not verify");
  }

  ArchivedCycle a;
  a.index = open_->index;
  a.cycle_id = open_->cycle_id;
  a.cert_digest = wire::cert_list_digest(current_);
  a.list_size = current_.size();
  a.downloaded_at = open_->downloaded_at;
  a.submitted_at = now;
  a.certs_signature = open_->certs_signature;
  a.vouchers_signature = std::move(result.signature);
  a.tree_seed = seed;
  a.voucher_root = tree.root();
  a.covered = model::update_was_timely(a.downloaded_at, a.submitted_at, c.max_update_interval);
  a.insurer_covered = result.covered;
  a.evidence = std::move(evidence);
  archive_.push_back(std::move(a));
  open_.reset();
  return archive_.back();
}

const ArchivedCycle& ClientAgent::archived(const CycleId& cycle_id) const {
  auto it = std::find_if(archive_.begin(), archive_.end(),
                         [&](const ArchivedCycle& a) { return a.cycle_id == cycle_id; });
  if (it == archive_.end()) throw Error(ErrorCode::kNotFound, "cycle is not in the archive");
  return *it;
}

wire::CertificateList ClientAgent::cert_list_for(std::uint64_t index) const {
  if (!current_index_) throw Error(ErrorCode::kNotFound, "no certificate list downloaded yet");
  return model::reconstruct_cert_list(current_, *current_index_, rollbacks_, index);
}

model::Claim ClientAgent::assemble_claim(const CycleId& cycle_id, const std::string& domain) const {
  std::lock_guard lock(mu_);
  if (domain == model::kPaddingDomain) throw Error(ErrorCode::kParameter, "padding vouchers cannot be claimed");
  const ArchivedCycle& a = archived(cycle_id);
  auto ev = std::find_if(a.evidence.begin(), a.evidence.end(),
                         [&](const model::VoucherEvidence& e) { return e.voucher.domain == domain; });
  if (ev == a.evidence.end()) throw Error(ErrorCode::kNotFound, "no voucher for " + domain + " in that cycle");

  std::vector<model::Voucher> vouchers;
  for (const auto& e : a.evidence) vouchers.push_back(e.voucher);
  const auto tree = merkle::PaddedMerkleTree::build(contract().customer, a.cycle_id, vouchers, a.list_size,
                                                    a.tree_seed);
  if (tree.root() != a.voucher_root) throw Error(ErrorCode::kCorruption, "regenerated voucher tree root differs");

  wire::CertificateList list = cert_list_for(a.index);
  if (wire::cert_list_digest(list) != a.cert_digest) {
    throw Error(ErrorCode::kCorruption, "reconstructed certificate list does not match the signed digest");
  }
  auto pos = std::find(list.begin(), list.end(), ev->certificate);
  if (pos == list.end()) throw Error(ErrorCode::kNotFound, "certificate is not on that cycle's list");

  model::Claim claim;
  claim.contract = contract();
  claim.cycle.cycle_id = a.cycle_id;
  claim.cycle.downloaded_at = a.downloaded_at;
  claim.cycle.submitted_at = a.submitted_at;
  claim.cycle.certs_signature = a.certs_signature;
  claim.cycle.vouchers_signature = a.vouchers_signature;
  claim.cycle.voucher_root = a.voucher_root;
  claim.cert_index = static_cast<std::uint64_t>(pos - list.begin());
  claim.cycle.certificates = std::move(list);
  claim.inclusion = tree.prove(ev->voucher);
  claim.evidence = *ev;
  return claim;
}

void ClientAgent::expire(std::uint64_t now, std::uint64_t retention_seconds) {
  std::lock_guard lock(mu_);
  const model::Contract& c = contract();
  rollbacks_ = model::expire_rollbacks(rollbacks_, {c.valid_from, c.valid_until, retention_seconds, now});
  if (!current_index_) return;
  const std::uint64_t oldest = rollbacks_.empty() ? *current_index_ : rollbacks_.front().cycle_index - 1;
  std::erase_if(archive_, [&](const ArchivedCycle& a) { return a.index < oldest; });
}

void ClientAgent::save(const std::filesystem::path& dir) const {
  std::lock_guard lock(mu_);
  const auto& params = chameleon_.public_key.params;
  std::filesystem::create_directories(dir);
  wire::TlvWriter w;
  w.raw(keys_.encode()).raw(chameleon_.encode());
  w.u8(Tag::kFlag, contract_ ? 1 : 0);
  if (contract_) w.raw(contract_->encode());
  w.u8(Tag::kFlag, current_index_ ? 1 : 0);
  if (current_index_) {
    w.u64(Tag::kIndex, *current_index_).raw(wire::encode_cert_list(current_));
  }
  w.raw(model::encode_rollback_log(rollbacks_));
  w.u8(Tag::kFlag, open_ ? 1 : 0);
  if (open_) w.raw(encode_open_cycle(*open_, params));
  write_file_atomic(dir / kStateFile, w.finish(Tag::kClientState));
  std::filesystem::permissions(dir / kStateFile,
                               std::filesystem::perms::owner_read | std::filesystem::perms::owner_write);

  wire::TlvWriter archive;
  for (const auto& a : archive_) archive.raw(encode_archived(a, params));
  write_file_atomic(dir / kArchiveFile, archive.finish(Tag::kClientArchive));
}

ClientAgent ClientAgent::load(const std::filesystem::path& dir, crypto::Rng& rng) {
  const Bytes state = read_file(dir / kStateFile);
  wire::TlvReader r(wire::open_record(state, Tag::kClientState));
  auto keys = crypto::SigKeyPair::decode(r.element(Tag::kSigKeyPair));
  auto chameleon = crypto::ChameleonKeyPair::decode(r.element(Tag::kChameleonKeyPair));
  ClientAgent agent(std::move(keys), std::move(chameleon), rng);
  if (r.u8(Tag::kFlag)) agent.contract_ = model::Contract::decode(r.element(Tag::kContract));
  if (r.u8(Tag::kFlag)) {
    agent.current_index_ = r.u64(Tag::kIndex);
    agent.current_ = wire::decode_cert_list(r.element(Tag::kCertList));
  }
  agent.rollbacks_ = model::decode_rollback_log(r.element(Tag::kRollbackLog));
  if (r.u8(Tag::kFlag)) agent.open_ = decode_open_cycle(r.element(Tag::kOpenCycle));
  r.expect_end();

  if (std::filesystem::exists(dir / kArchiveFile)) {
    const Bytes archive = read_file(dir / kArchiveFile);
    wire::TlvReader a(wire::open_record(archive, Tag::kClientArchive));
    while (!a.at_end()) agent.archive_.push_back(decode_archived(a.element(Tag::kArchiveEntry)));
  }
  return agent;
}

}  // namespace ci::client

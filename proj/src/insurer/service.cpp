#include "ci/insurer/service.hpp"

#include <algorithm>
#include <set>

#include "ci/common/io.hpp"
#include "ci/crypto/hash.hpp"
#include "ci/wire/tlv.hpp"

namespace ci::insurer {

using wire::Tag;

namespace {

constexpr const char* kKeyFile = "insurer.key";
constexpr const char* kPublicKeyFile = "insurer.pub";
constexpr const char* kStateFile = "state.tlv";
constexpr const char* kRecordsFile = "records.log";

void require_unique(const wire::CertificateList& certs) {
  std::set<Bytes> seen;
  for (const auto& c : certs) {
    if (c.empty()) throw Error(ErrorCode::kParameter, "empty certificate");
    if (!seen.insert(c).second) throw Error(ErrorCode::kParameter, "duplicate certificate in list");
  }
}

Bytes encode_cycle(const InsurerCycle& c) {
  return wire::TlvWriter()
      .bytes(Tag::kCycleId, c.cycle_id.bytes)
      .u64(Tag::kVersion, c.list_version)
      .u8(Tag::kFlag, static_cast<std::uint8_t>(c.status))
      .u64(Tag::kTimestamp, c.downloaded_at)
      .u64(Tag::kTimestamp, c.submitted_at)
      .bytes(Tag::kHash, c.voucher_root)
      .u8(Tag::kFlag, c.covered ? 1 : 0)
      .finish(Tag::kInsurerCycle);
}

InsurerCycle decode_cycle(ByteView encoded) {
  wire::TlvReader r(wire::open_record(encoded, Tag::kInsurerCycle));
  InsurerCycle c;
  c.cycle_id.bytes = r.fixed<32>(Tag::kCycleId);
  c.list_version = r.u64(Tag::kVersion);
  const auto status = r.u8(Tag::kFlag);
  if (status > 2) throw Error(ErrorCode::kCorruption, "bad cycle status");
  c.status = static_cast<CycleStatus>(status);
  c.downloaded_at = r.u64(Tag::kTimestamp);
  c.submitted_at = r.u64(Tag::kTimestamp);
  c.voucher_root = r.fixed<32>(Tag::kHash);
  c.covered = r.u8(Tag::kFlag) != 0;
  r.expect_end();
  return c;
}

}  // namespace

InsurerService::InsurerService(crypto::SigKeyPair keys, crypto::Rng& rng, const Clock& clock, InsurerConfig config)
    : keys_(std::move(keys)), rng_(&rng), clock_(&clock), config_(std::move(config)) {}

InsurerService::InsurerService(InsurerService&& other) noexcept
    : keys_(std::move(other.keys_)),
      rng_(other.rng_),
      clock_(other.clock_),
      config_(std::move(other.config_)),
      lists_(std::move(other.lists_)),
      next_customer_(other.next_customer_),
      contracts_(std::move(other.contracts_)),
      cycle_owner_(std::move(other.cycle_owner_)),
      records_(std::move(other.records_)),
      dir_(std::move(other.dir_)) {}

InsurerService InsurerService::setup(const wire::CertificateList& initial, crypto::Rng& rng, const Clock& clock,
                                     InsurerConfig config) {
  return from_keys(crypto::generate_sig_keypair(rng), initial, rng, clock, std::move(config));
}

InsurerService InsurerService::from_keys(crypto::SigKeyPair keys, const wire::CertificateList& initial,
                                         crypto::Rng& rng, const Clock& clock, InsurerConfig config) {
  if (initial.empty()) throw Error(ErrorCode::kParameter, "initial certificate list is empty");
  require_unique(initial);
  InsurerService s(std::move(keys), rng, clock, std::move(config));
  s.lists_[0] = initial;
  return s;
}

crypto::SigPublicKey InsurerService::public_key() const { return keys_.public_part(); }

wire::CertificateList InsurerService::current_list() const {
  std::lock_guard lock(mu_);
  return lists_.rbegin()->second;
}

std::uint64_t InsurerService::list_version() const {
  std::lock_guard lock(mu_);
  return lists_.rbegin()->first;
}

wire::CertificateList InsurerService::list_at(std::uint64_t version) const {
  std::lock_guard lock(mu_);
  auto it = lists_.find(version);
  if (it == lists_.end()) throw Error(ErrorCode::kNotFound, "no such certificate list version");
  return it->second;
}

std::uint64_t InsurerService::update_cert_list(const wire::CertificateList& adds,
                                               const wire::CertificateList& removes) {
  std::lock_guard lock(mu_);
  wire::CertificateList next = lists_.rbegin()->second;
  for (const auto& rm : removes) {
    auto it = std::find(next.begin(), next.end(), rm);
    if (it == next.end()) throw Error(ErrorCode::kNotFound, "certificate to remove is not in the list");
    next.erase(it);
  }
  next.insert(next.end(), adds.begin(), adds.end());
  if (next.empty()) throw Error(ErrorCode::kParameter, "certificate list would become empty");
  require_unique(next);
  const std::uint64_t version = lists_.rbegin()->first + 1;
  lists_[version] = std::move(next);
  save_snapshot();
  return version;
}

ContractState& InsurerService::contract_for(CustomerId customer) {
  auto it = contracts_.find(customer);
  if (it == contracts_.end()) throw Error(ErrorCode::kNotFound, "unknown customer");
  return it->second;
}

InsurerCycle& InsurerService::open_cycle(ContractState& state, const CycleId& id) {
  auto owner = cycle_owner_.find(id);
  if (owner == cycle_owner_.end() || owner->second != state.contract.customer) {
    throw Error(ErrorCode::kUnknownCycle, "cycle id is not known for this customer");
  }
  if (state.cycles.back().cycle_id != id) throw Error(ErrorCode::kSequencing, "cycle is no longer open");
  return state.cycles.back();
}

void InsurerService::check_recent(std::uint64_t t) const {
  const std::uint64_t now = clock_->now();
  const std::uint64_t skew = now > t ? now - t : t - now;
  if (skew > config_.recency_window) throw Error(ErrorCode::kRecency, "timestamp is not recent");
}

crypto::ChameleonSignature InsurerService::countersign(const ContractState& state, std::string_view label,
                                                       const Bytes& payload) {
  const auto& key = state.contract.chameleon_key;
  const crypto::SignatureContext ctx{state.contract.customer, std::string(label)};
  auto sig = crypto::chameleon_sign(keys_, key, payload, ctx, *rng_);
  ChameleonRecord rec{state.contract.customer, payload, sig.randomizer,
                      crypto::chameleon_hash(key, payload, sig.randomizer)};
  if (dir_) append_file(*dir_ / kRecordsFile, rec.encode(config_.group));
  records_.push_back(std::move(rec));
  return sig;
}

model::Contract InsurerService::register_customer(const RegisterRequest& req) {
  std::lock_guard lock(mu_);
  if (!(req.chameleon_key.params == config_.group)) {
    throw Error(ErrorCode::kRegistration, "chameleon key uses a different group");
  }
  if (!crypto::is_subgroup_element(config_.group, req.chameleon_key.y)) {
    throw Error(ErrorCode::kRegistration, "chameleon key is not a subgroup element");
  }
  if (req.customer_key.key.size() != 32) throw Error(ErrorCode::kRegistration, "malformed customer key");
  const auto pk = keys_.public_part();
  const Bytes ctx = model::registration_context(pk, req.customer_key, req.chameleon_key);
  if (!crypto::verify_trapdoor(req.chameleon_key, ctx, req.trapdoor_proof)) {
    throw Error(ErrorCode::kRegistration, "trapdoor proof rejected");
  }
  model::Contract c;
  c.customer = CustomerId{next_customer_++};
  c.insurer_key = pk;
  c.customer_key = req.customer_key;
  c.chameleon_key = req.chameleon_key;
  c.trapdoor_proof = req.trapdoor_proof;
  c.valid_from = clock_->now();
  c.valid_until = c.valid_from + config_.policy_length;
  c.max_update_interval = req.max_update_interval ? req.max_update_interval : config_.default_max_update_interval;
  c.insurer_signature = crypto::sign(keys_, c.body());
  contracts_[c.customer] = ContractState{c, {}};
  save_snapshot();
  return c;
}

CycleOffer InsurerService::begin_cycle(CustomerId customer) {
  std::lock_guard lock(mu_);
  ContractState& state = contract_for(customer);
  const std::uint64_t now = clock_->now();
  if (now < state.contract.valid_from || now >= state.contract.valid_until) {
    throw Error(ErrorCode::kExpired, "contract is not valid at this time");
  }
  if (!state.cycles.empty() && state.cycles.back().status != CycleStatus::kSubmitted) {
    throw Error(ErrorCode::kSequencing, "previous cycle has not been submitted");
  }
  CycleId id;
  do {
    id.bytes = rng_->array<32>();
  } while (cycle_owner_.contains(id));
  InsurerCycle cycle;
  cycle.cycle_id = id;
  cycle.list_version = lists_.rbegin()->first;
  state.cycles.push_back(cycle);
  cycle_owner_[id] = customer;
  save_snapshot();
  return {id, lists_.rbegin()->second, cycle.list_version};
}

crypto::ChameleonSignature InsurerService::ack_certificates(const AckCertsRequest& req) {
  std::lock_guard lock(mu_);
  ContractState& state = contract_for(req.customer);
  InsurerCycle& cycle = open_cycle(state, req.cycle_id);
  if (cycle.status != CycleStatus::kPending) throw Error(ErrorCode::kSequencing, "certificates already acknowledged");
  check_recent(req.downloaded_at);
  const Bytes payload = wire::encode_signed_payload(wire::kLabelCertificates, req.customer, req.cycle_id,
                                                    req.downloaded_at,
                                                    wire::cert_list_digest(lists_.at(cycle.list_version)));
  if (!crypto::verify(state.contract.customer_key, payload, req.customer_signature)) {
    throw Error(ErrorCode::kBadSignature, "customer signature over certificate payload is invalid");
  }
  auto sig = countersign(state, wire::kLabelCertificates, payload);
  cycle.downloaded_at = req.downloaded_at;
  cycle.status = CycleStatus::kCertsAcked;
  save_snapshot();
  return sig;
}

SubmitResult InsurerService::accept_vouchers(const SubmitVouchersRequest& req) {
  std::lock_guard lock(mu_);
  ContractState& state = contract_for(req.customer);
  InsurerCycle& cycle = open_cycle(state, req.cycle_id);
  if (cycle.status != CycleStatus::kCertsAcked) {
    throw Error(ErrorCode::kSequencing, "cycle is not awaiting voucher submission");
  }
  check_recent(req.submitted_at);
  if (req.submitted_at < cycle.downloaded_at) throw Error(ErrorCode::kRecency, "submission precedes download");
  const Bytes payload = wire::encode_signed_payload(wire::kLabelVouchers, req.customer, req.cycle_id,
                                                    req.submitted_at, req.voucher_root);
  if (!crypto::verify(state.contract.customer_key, payload, req.customer_signature)) {
    throw Error(ErrorCode::kBadSignature, "customer signature over voucher payload is invalid");
  }
  SubmitResult result;
  result.signature = countersign(state, wire::kLabelVouchers, payload);
  result.covered =
      model::update_was_timely(cycle.downloaded_at, req.submitted_at, state.contract.max_update_interval);
  cycle.submitted_at = req.submitted_at;
  cycle.voucher_root = req.voucher_root;
  cycle.covered = result.covered;
  cycle.status = CycleStatus::kSubmitted;
  save_snapshot();
  return result;
}

std::optional<ChameleonRecord> InsurerService::lookup_record(const RecordQuery& query) const {
  std::lock_guard lock(mu_);
  for (const auto& rec : records_) {
    const bool hit = query.kind == RecordQuery::Kind::kChameleonValue
                         ? rec.chameleon_value == crypto::BigNum::from_bytes(query.key)
                         : constant_time_equal(crypto::hash_h(rec.message), query.key);
    if (hit) return rec;
  }
  return std::nullopt;
}

std::size_t InsurerService::record_count() const {
  std::lock_guard lock(mu_);
  return records_.size();
}

std::vector<ChameleonRecord> InsurerService::records() const {
  std::lock_guard lock(mu_);
  return records_;
}

std::optional<ContractState> InsurerService::contract_state(CustomerId customer) const {
  std::lock_guard lock(mu_);
  auto it = contracts_.find(customer);
  if (it == contracts_.end()) return std::nullopt;
  return it->second;
}

Bytes InsurerService::handle(ByteView request) {
  try {
    wire::TlvReader head(request);
    const Tag tag = head.peek_tag();
    const ByteView body = wire::open_record(request, tag);
    switch (tag) {
      case Tag::kRegisterRequest:
        return encode_register_response(register_customer(decode_register_request(body)));
      case Tag::kBeginCycleRequest:
        return encode_begin_cycle_response(begin_cycle(decode_begin_cycle_request(body).customer));
      case Tag::kAckCertsRequest:
        return encode_ack_certs_response(ack_certificates(decode_ack_certs_request(body)), config_.group);
      case Tag::kSubmitVouchersRequest:
        return encode_submit_vouchers_response(accept_vouchers(decode_submit_vouchers_request(body)),
                                               config_.group);
      case Tag::kLookupRecordRequest:
        return encode_lookup_response(lookup_record(decode_record_query(body)), config_.group);
      default:
        return encode_error_response(ErrorCode::kParse, "unknown endpoint");
    }
  } catch (const Error& e) {
    return encode_error_response(e.code(), e.what());
  } catch (const std::exception& e) {
    return encode_error_response(ErrorCode::kRejected, e.what());
  }
}

Bytes InsurerService::encode_snapshot() const {
  wire::TlvWriter lists;
  for (const auto& [version, certs] : lists_) {
    lists.raw(wire::TlvWriter()
                  .u64(Tag::kVersion, version)
                  .raw(wire::encode_cert_list(certs))
                  .finish(Tag::kCertListVersion));
  }
  wire::TlvWriter contracts;
  for (const auto& [id, state] : contracts_) {
    wire::TlvWriter cycles;
    for (const auto& c : state.cycles) cycles.raw(encode_cycle(c));
    contracts.raw(
        wire::TlvWriter().raw(state.contract.encode()).raw(cycles.finish(Tag::kList)).finish(Tag::kContractState));
  }
  return wire::TlvWriter()
      .u64(Tag::kCount, next_customer_)
      .raw(lists.finish(Tag::kList))
      .raw(contracts.finish(Tag::kList))
      .finish(Tag::kInsurerState);
}

void InsurerService::decode_snapshot(ByteView encoded) {
  wire::TlvReader r(wire::open_record(encoded, Tag::kInsurerState));
  next_customer_ = r.u64(Tag::kCount);
  wire::TlvReader lists(r.bytes(Tag::kList));
  while (!lists.at_end()) {
    wire::TlvReader v(wire::open_record(lists.element(Tag::kCertListVersion), Tag::kCertListVersion));
    const auto version = v.u64(Tag::kVersion);
    lists_[version] = wire::decode_cert_list(v.element(Tag::kCertList));
    v.expect_end();
  }
  if (lists_.empty()) throw Error(ErrorCode::kCorruption, "insurer state has no certificate list");
  wire::TlvReader contracts(r.bytes(Tag::kList));
  while (!contracts.at_end()) {
    wire::TlvReader s(wire::open_record(contracts.element(Tag::kContractState), Tag::kContractState));
    ContractState state;
    state.contract = model::Contract::decode(s.element(Tag::kContract));
    wire::TlvReader cycles(s.bytes(Tag::kList));
    while (!cycles.at_end()) {
      state.cycles.push_back(decode_cycle(cycles.element(Tag::kInsurerCycle)));
      cycle_owner_[state.cycles.back().cycle_id] = state.contract.customer;
    }
    s.expect_end();
    contracts_[state.contract.customer] = std::move(state);
  }
  r.expect_end();
}

void InsurerService::save_snapshot() const {
  if (dir_) write_file_atomic(*dir_ / kStateFile, encode_snapshot());
}

void InsurerService::persist_to(const std::filesystem::path& dir) {
  std::lock_guard lock(mu_);
  std::filesystem::create_directories(dir);
  write_file_atomic(dir / kKeyFile, keys_.encode());
  std::filesystem::permissions(dir / kKeyFile, std::filesystem::perms::owner_read | std::filesystem::perms::owner_write);
  write_file_atomic(dir / kPublicKeyFile, keys_.public_part().encode());
  Bytes log;
  for (const auto& rec : records_) append(log, rec.encode(config_.group));
  write_file_atomic(dir / kRecordsFile, log);
  dir_ = dir;
  save_snapshot();
}

InsurerService InsurerService::load(const std::filesystem::path& dir, crypto::Rng& rng, const Clock& clock,
                                    InsurerConfig config) {
  InsurerService s(crypto::SigKeyPair::decode(read_file(dir / kKeyFile)), rng, clock, std::move(config));
  s.decode_snapshot(read_file(dir / kStateFile));
  if (std::filesystem::exists(dir / kRecordsFile)) {
    const Bytes log = read_file(dir / kRecordsFile);
    wire::TlvReader r(log);
    while (!r.at_end()) s.records_.push_back(ChameleonRecord::decode(r.element(Tag::kChameleonRecord)));
  }
  s.dir_ = dir;
  return s;
}

std::filesystem::path insurer_public_key_path(const std::filesystem::path& dir) { return dir / kPublicKeyFile; }

}  // namespace ci::insurer

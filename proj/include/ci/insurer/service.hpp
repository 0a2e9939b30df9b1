#pragma once

#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <vector>

#include "ci/common/clock.hpp"
#include "ci/crypto/random.hpp"
#include "ci/insurer/protocol.hpp"

namespace ci::insurer {

struct InsurerConfig {
  /// Largest accepted |now - t| for customer-supplied timestamps.
  std::uint64_t recency_window = 300;
  /// Contract term t_end - t0.
  std::uint64_t policy_length = model::kDefaultRetentionSeconds;
  std::uint64_t default_max_update_interval = model::kSecondsPerDay;
  crypto::GroupParams group = crypto::production_group();
};

enum class CycleStatus : std::uint8_t { kPending = 0, kCertsAcked = 1, kSubmitted = 2 };

/// Insurer-side view of one cycle. Only the root of the voucher tree is kept.
struct InsurerCycle {
  CycleId cycle_id;
  std::uint64_t list_version = 0;
  CycleStatus status = CycleStatus::kPending;
  std::uint64_t downloaded_at = 0;
  std::uint64_t submitted_at = 0;
  Digest voucher_root{};
  bool covered = false;

  friend bool operator==(const InsurerCycle&, const InsurerCycle&) = default;
};

struct ContractState {
  model::Contract contract;
  std::vector<InsurerCycle> cycles;

  friend bool operator==(const ContractState&, const ContractState&) = default;
};

/// The insurer IN. All operations serialize on one service lock, which also
/// gives the record log its total order.
class InsurerService {
 public:
  /// Throws ErrorCode::kParameter on an empty or duplicate-containing list.
  static InsurerService setup(const wire::CertificateList& initial, crypto::Rng& rng, const Clock& clock,
                              InsurerConfig config = {});
  static InsurerService from_keys(crypto::SigKeyPair keys, const wire::CertificateList& initial, crypto::Rng& rng,
                                  const Clock& clock, InsurerConfig config = {});

  /// Attaches a state directory. Every mutation is persisted before it returns.
  void persist_to(const std::filesystem::path& dir);
  static InsurerService load(const std::filesystem::path& dir, crypto::Rng& rng, const Clock& clock,
                             InsurerConfig config = {});

  InsurerService(InsurerService&& other) noexcept;
  InsurerService& operator=(InsurerService&&) = delete;

  crypto::SigPublicKey public_key() const;
  const crypto::GroupParams& group() const { return config_.group; }
  const InsurerConfig& config() const { return config_; }

  wire::CertificateList current_list() const;
  std::uint64_t list_version() const;
  wire::CertificateList list_at(std::uint64_t version) const;
  /// Throws ErrorCode::kNotFound when a removal is not a member; returns the new version.
  std::uint64_t update_cert_list(const wire::CertificateList& adds, const wire::CertificateList& removes);

  model::Contract register_customer(const RegisterRequest& req);
  CycleOffer begin_cycle(CustomerId customer);
  crypto::ChameleonSignature ack_certificates(const AckCertsRequest& req);
  SubmitResult accept_vouchers(const SubmitVouchersRequest& req);
  std::optional<ChameleonRecord> lookup_record(const RecordQuery& query) const;

  std::size_t record_count() const;
  std::vector<ChameleonRecord> records() const;
  std::optional<ContractState> contract_state(CustomerId customer) const;

  /// Endpoint dispatch for one framed request. Never throws; failures become
  /// ERROR responses.
  Bytes handle(ByteView request);

 private:
  InsurerService(crypto::SigKeyPair keys, crypto::Rng& rng, const Clock& clock, InsurerConfig config);

  ContractState& contract_for(CustomerId customer);
  InsurerCycle& open_cycle(ContractState& state, const CycleId& id);
  void check_recent(std::uint64_t t) const;
  crypto::ChameleonSignature countersign(const ContractState& state, std::string_view label, const Bytes& payload);
  void save_snapshot() const;
  Bytes encode_snapshot() const;
  void decode_snapshot(ByteView encoded);

  mutable std::mutex mu_;
  crypto::SigKeyPair keys_;
  crypto::Rng* rng_;
  const Clock* clock_;
  InsurerConfig config_;
  std::map<std::uint64_t, wire::CertificateList> lists_;
  std::uint64_t next_customer_ = 1;
  std::map<CustomerId, ContractState> contracts_;
  std::map<CycleId, CustomerId> cycle_owner_;
  std::vector<ChameleonRecord> records_;
  std::optional<std::filesystem::path> dir_;
};

std::filesystem::path insurer_public_key_path(const std::filesystem::path& dir);

/// In-process transport straight into a service.
class LocalChannel final : public Channel {
 public:
  explicit LocalChannel(InsurerService& service) : service_(service) {}
  Bytes call(ByteView request) override { return service_.handle(request); }

 private:
  InsurerService& service_;
};

}  // namespace ci::insurer

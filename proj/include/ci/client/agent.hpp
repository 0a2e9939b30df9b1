#pragma once

#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "ci/crypto/chameleon.hpp"
#include "ci/crypto/random.hpp"
#include "ci/insurer/protocol.hpp"
#include "ci/model/claim.hpp"
#include "ci/model/rollback.hpp"
#include "ci/tls/handshake.hpp"

namespace ci::client {

/// Cycle between download and submission.
struct OpenCycle {
  std::uint64_t index = 0;
  CycleId cycle_id;
  std::uint64_t downloaded_at = 0;
  crypto::ChameleonSignature certs_signature;
  /// One voucher per domain.
  std::map<std::string, model::VoucherEvidence> vouchers;

  friend bool operator==(const OpenCycle&, const OpenCycle&) = default;
};

/// Closed cycle. The voucher tree itself is not kept; it is rebuilt from the seed.
struct ArchivedCycle {
  std::uint64_t index = 0;
  CycleId cycle_id;
  Digest cert_digest{};
  std::uint64_t list_size = 0;
  std::uint64_t downloaded_at = 0;
  std::uint64_t submitted_at = 0;
  crypto::ChameleonSignature certs_signature;
  crypto::ChameleonSignature vouchers_signature;
  Digest tree_seed{};
  Digest voucher_root{};
  /// Local t' - t <= ΔT check.
  bool covered = false;
  /// Flag returned by the insurer.
  bool insurer_covered = false;
  std::vector<model::VoucherEvidence> evidence;

  friend bool operator==(const ArchivedCycle&, const ArchivedCycle&) = default;
};

enum class BrowseStatus { kVouched, kReused, kUntrusted, kHostnameMismatch };

struct BrowseResult {
  BrowseStatus status = BrowseStatus::kUntrusted;
  std::optional<model::VoucherEvidence> evidence;
  std::string warning;
};

std::string_view browse_status_name(BrowseStatus status);

/// Customer agent: keys, contract, certificate list with rollback log, the
/// open cycle's vouchers and the archive of closed cycles.
class ClientAgent {
 public:
  static ClientAgent create(crypto::Rng& rng, const crypto::GroupParams& group = crypto::production_group());

  ClientAgent(ClientAgent&& other) noexcept;
  ClientAgent& operator=(ClientAgent&&) = delete;

  /// Proves the trapdoor, registers and checks the returned contract.
  const model::Contract& register_with(insurer::InsurerStub& insurer, const crypto::SigPublicKey& insurer_key,
                                       std::uint64_t requested_interval = 0);

  /// BEGIN_CYCLE + ACK_CERTS. Throws ErrorCode::kSequencing while a cycle is
  /// open and ErrorCode::kBadSignature when the insurer's signature does not
  /// verify over the list received (the list is then not accepted).
  const OpenCycle& do_update_cycle(insurer::InsurerStub& insurer, std::uint64_t now);

  BrowseResult browse(const std::string& domain, const tls::SimServer& server, std::uint64_t now);

  /// Builds the padded voucher tree with a fresh seed and submits its root.
  const ArchivedCycle& submit_cycle(insurer::InsurerStub& insurer, std::uint64_t now);

  /// Throws ErrorCode::kNotFound when the cycle holds no voucher for `domain`.
  model::Claim assemble_claim(const CycleId& cycle_id, const std::string& domain) const;

  /// C_j for archived cycle index j, rebuilt through the rollback log.
  wire::CertificateList cert_list_for(std::uint64_t index) const;

  void save(const std::filesystem::path& dir) const;
  static ClientAgent load(const std::filesystem::path& dir, crypto::Rng& rng);

  const crypto::SigKeyPair& keys() const { return keys_; }
  const crypto::ChameleonKeyPair& chameleon_keys() const { return chameleon_; }
  bool registered() const { return contract_.has_value(); }
  const model::Contract& contract() const;
  const wire::CertificateList& current_list() const { return current_; }
  std::optional<std::uint64_t> current_index() const { return current_index_; }
  const model::RollbackLog& rollback_log() const { return rollbacks_; }
  const std::optional<OpenCycle>& open_cycle() const { return open_; }
  const std::vector<ArchivedCycle>& archive() const { return archive_; }
  const ArchivedCycle& archived(const CycleId& cycle_id) const;

  /// Drops rollback deltas and archive entries outside both the contract term and the retention window.
  void expire(std::uint64_t now, std::uint64_t retention_seconds = model::kDefaultRetentionSeconds);

 private:
  ClientAgent(crypto::SigKeyPair keys, crypto::ChameleonKeyPair chameleon, crypto::Rng& rng);

  mutable std::mutex mu_;
  crypto::SigKeyPair keys_;
  crypto::ChameleonKeyPair chameleon_;
  crypto::Rng* rng_;
  std::optional<model::Contract> contract_;
  wire::CertificateList current_;
  std::optional<std::uint64_t> current_index_;
  model::RollbackLog rollbacks_;
  std::optional<OpenCycle> open_;
  std::vector<ArchivedCycle> archive_;
};

}  // namespace ci::client

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ci/crypto/pki.hpp"
#include "ci/judge/judge.hpp"
#include "ci/model/claim.hpp"

namespace ci::sim {

enum class ScenarioKind { kHonest, kMitm };

struct ScenarioConfig {
  ScenarioKind kind = ScenarioKind::kHonest;
  std::size_t cycles = 5;
  std::size_t domains = 20;
  std::uint64_t seed = 1;
  /// 1-based cycle in which the rogue certificate joins the list and is used.
  std::size_t rogue_cycle = 3;
  /// Submit the rogue cycle at t + ΔT + 1 instead of t + ΔT.
  bool late = false;
  std::uint64_t max_update_interval = 86400;
  std::uint64_t start_time = 1'700'000'000;
  crypto::ServerKeyType server_key = crypto::ServerKeyType::kEd25519;
};

struct CycleReport {
  std::uint64_t index = 0;
  CycleId cycle_id;
  std::size_t list_size = 0;
  std::size_t vouchers = 0;
  std::size_t warnings = 0;
  bool covered = false;
  bool insurer_covered = false;
};

struct ScenarioReport {
  ScenarioConfig config;
  crypto::SigPublicKey insurer_key;
  std::vector<CycleReport> cycles;
  std::size_t records = 0;
  std::string target_domain;
  std::optional<model::Claim> claim;
  std::optional<judge::Verdict> verdict;

  bool cycle_ids_distinct() const;
  bool all_covered() const;
};

/// Runs one insurer, `domains` simulated web servers and one client for
/// `cycles` update cycles with all randomness drawn from `seed`. In the MITM
/// scenario a rogue certificate for one domain is added to the insured list in
/// `rogue_cycle`, a man in the middle presents it, and the resulting claim is
/// assembled and judged with the rogue assertion set.
ScenarioReport run_scenario(const ScenarioConfig& config);

}  // namespace ci::sim

#include "ci/sim/scenario.hpp"

#include <algorithm>
#include <set>

#include "ci/client/agent.hpp"
#include "ci/common/clock.hpp"
#include "ci/common/error.hpp"
#include "ci/insurer/service.hpp"
#include "ci/tls/handshake.hpp"

namespace ci::sim {

namespace {

constexpr std::uint64_t kBrowseSpacing = 30;

}  // namespace

bool ScenarioReport::cycle_ids_distinct() const {
  std::set<CycleId> ids;
  for (const auto& c : cycles) ids.insert(c.cycle_id);
  return ids.size() == cycles.size();
}

bool ScenarioReport::all_covered() const {
  for (const auto& c : cycles) {
    if (!c.covered || !c.insurer_covered) return false;
  }
  return true;
}

ScenarioReport run_scenario(const ScenarioConfig& config) {
  if (config.domains == 0 || config.cycles == 0) throw Error(ErrorCode::kParameter, "need at least one domain and cycle");
  const bool mitm = config.kind == ScenarioKind::kMitm;
  if (mitm && (config.rogue_cycle == 0 || config.rogue_cycle > config.cycles)) {
    throw Error(ErrorCode::kParameter, "rogue cycle outside the run");
  }

  crypto::DeterministicRng rng(config.seed);
  ManualClock clock(config.start_time);
  const auto ca = tls::SimCertificateAuthority::create("Simulated Root CA", rng);

  std::vector<tls::SimServer> servers;
  wire::CertificateList initial;
  for (std::size_t i = 0; i < config.domains; ++i) {
    servers.push_back(tls::SimServer::create("site" + std::to_string(i) + ".example", ca, rng, i + 1, clock.now(),
                                             config.server_key));
    initial.push_back(servers.back().certificate());
  }

  insurer::InsurerConfig icfg;
  icfg.default_max_update_interval = config.max_update_interval;
  auto service = insurer::InsurerService::setup(initial, rng, clock, icfg);
  insurer::LocalChannel channel(service);
  insurer::InsurerStub stub(channel);

  auto agent = client::ClientAgent::create(rng);
  agent.register_with(stub, service.public_key());

  ScenarioReport report;
  report.config = config;
  report.insurer_key = service.public_key();
  const std::size_t target = mitm ? rng.uniform(config.domains) : 0;
  report.target_domain = servers[target].domain();
  std::optional<tls::SimServer> attacker;
  Bytes rogue_cert;
  CycleId rogue_cycle_id;

  for (std::size_t c = 1; c <= config.cycles; ++c) {
    const bool rogue_now = mitm && c == config.rogue_cycle;
    if (rogue_now) {
      // A compromised issuer signs the attacker's key under the victim's name;
      // vetting misses it and the certificate becomes insured.
      auto attacker_key = crypto::PrivateKey::generate(config.server_key, rng);
      rogue_cert = ca.issue(report.target_domain, attacker_key, 1000 + c, clock.now());
      service.update_cert_list({rogue_cert}, {});
      attacker = tls::SimServer::mitm(report.target_domain, rogue_cert, std::move(attacker_key));
    } else if (mitm && c == config.rogue_cycle + 1) {
      service.update_cert_list({}, {rogue_cert});
    }

    const std::uint64_t t = clock.now();
    const auto& open = agent.do_update_cycle(stub, t);
    CycleReport cr;
    cr.index = open.index;
    cr.cycle_id = open.cycle_id;
    if (rogue_now) rogue_cycle_id = open.cycle_id;

    const std::uint64_t delay = config.max_update_interval + (rogue_now && config.late ? 1 : 0);
    std::uint64_t browse_at = t;
    for (std::size_t i = 0; i < servers.size(); ++i) {
      const bool visit = (rogue_now && i == target) || rng.uniform(4) != 0;
      if (!visit) continue;
      browse_at = std::min(browse_at + kBrowseSpacing, t + delay);
      const tls::SimServer& peer = rogue_now && i == target ? *attacker : servers[i];
      const auto result = agent.browse(servers[i].domain(), peer, browse_at);
      if (!result.evidence) ++cr.warnings;
    }

    clock.set(t + delay);
    const auto& closed = agent.submit_cycle(stub, clock.now());
    cr.list_size = closed.list_size;
    cr.vouchers = closed.evidence.size();
    cr.covered = closed.covered;
    cr.insurer_covered = closed.insurer_covered;
    report.cycles.push_back(cr);
  }
  report.records = service.record_count();

  if (mitm) {
    report.claim = agent.assemble_claim(rogue_cycle_id, report.target_domain);
    report.verdict = judge::verify_claim(*report.claim, report.insurer_key, true);
  }
  return report;
}

}  // namespace ci::sim

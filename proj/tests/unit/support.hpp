#pragma once

#include <unistd.h>

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "ci/client/agent.hpp"
#include "ci/common/clock.hpp"
#include "ci/common/error.hpp"
#include "ci/common/io.hpp"
#include "ci/crypto/random.hpp"
#include "ci/insurer/service.hpp"
#include "ci/tls/handshake.hpp"

namespace ci::testing {

/// Code of the ci::Error thrown by f; fails the test when nothing is thrown.
inline std::optional<ErrorCode> code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no ci::Error thrown";
  return std::nullopt;
}

inline Bytes golden(const std::string& name) {
  const Bytes text = read_file(std::string(CI_GOLDEN_DIR) + "/" + name);
  return from_hex(std::string(text.begin(), text.end()));
}

/// p = 23, q = 11, g = 4: small enough to check every value by hand.
inline const crypto::GroupParams& toy_group() {
  static const crypto::GroupParams g{crypto::BigNum(23), crypto::BigNum(11), crypto::BigNum(4)};
  return g;
}

inline std::filesystem::path temp_dir(const std::string& tag) {
  static int counter = 0;
  auto dir = std::filesystem::temp_directory_path() /
             ("ci-test-" + tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

/// One insurer, `domains` honest servers and one registered client, all
/// in-process with a deterministic RNG and a manual clock.
struct World {
  explicit World(std::uint64_t seed = 1, std::size_t domains = 4, std::uint64_t interval = 86400)
      : rng(seed), clock(1'700'000'000), ca(tls::SimCertificateAuthority::create("Test CA", rng)) {
    wire::CertificateList certs;
    for (std::size_t i = 0; i < domains; ++i) {
      servers.push_back(
          tls::SimServer::create("host" + std::to_string(i) + ".test", ca, rng, i + 1, clock.now()));
      certs.push_back(servers.back().certificate());
    }
    insurer::InsurerConfig cfg;
    cfg.default_max_update_interval = interval;
    service.emplace(insurer::InsurerService::setup(certs, rng, clock, cfg));
    channel = std::make_unique<insurer::LocalChannel>(*service);
    stub = std::make_unique<insurer::InsurerStub>(*channel);
    client.emplace(client::ClientAgent::create(rng));
    client->register_with(*stub, service->public_key());
  }
  World(const World&) = delete;
  World& operator=(const World&) = delete;

  /// Download, visit `visits` (server indices), submit `delay` seconds after download.
  const client::ArchivedCycle& run_cycle(const std::vector<std::size_t>& visits, std::uint64_t delay = 3600) {
    const std::uint64_t t = clock.now();
    client->do_update_cycle(*stub, t);
    for (std::size_t i : visits) client->browse(servers.at(i).domain(), servers.at(i), t + 1);
    clock.set(t + delay);
    const auto& a = client->submit_cycle(*stub, clock.now());
    clock.advance(10);
    return a;
  }

  crypto::DeterministicRng rng;
  ManualClock clock;
  tls::SimCertificateAuthority ca;
  std::vector<tls::SimServer> servers;
  std::optional<insurer::InsurerService> service;
  std::unique_ptr<insurer::LocalChannel> channel;
  std::unique_ptr<insurer::InsurerStub> stub;
  std::optional<client::ClientAgent> client;
};

}  // namespace ci::testing

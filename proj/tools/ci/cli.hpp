#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <functional>
#include <optional>
#include <string>

#include "ci/common/bytes.hpp"
#include "ci/common/error.hpp"
#include "ci/crypto/random.hpp"

namespace ci::cli {

using json = nlohmann::json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 64;

struct Result {
  int code = kExitOk;
  json data = json::object();
  std::string text;
};

struct Globals {
  bool json_output = false;
  std::optional<std::uint64_t> seed;
};

/// Seeded DeterministicRng when --seed is given, the system CSPRNG otherwise.
crypto::Rng& rng(const Globals& g);

int exit_code(ErrorCode code);

Bytes read_input(const std::filesystem::path& path);
std::string hex(ByteView data);

using Action = std::function<Result()>;

/// Every subcommand registers its action here; main runs the selected one.
struct Registry {
  Globals globals;
  std::vector<std::pair<CLI::App*, Action>> actions;
  void add(CLI::App* app, Action action) { actions.emplace_back(app, std::move(action)); }
};

void add_insurer_commands(CLI::App& app, Registry& reg);
void add_client_commands(CLI::App& app, Registry& reg);
void add_server_commands(CLI::App& app, Registry& reg);
void add_judge_commands(CLI::App& app, Registry& reg);
void add_estimate_commands(CLI::App& app, Registry& reg);
void add_simulate_commands(CLI::App& app, Registry& reg);
void add_bench_commands(CLI::App& app, Registry& reg);

}  // namespace ci::cli

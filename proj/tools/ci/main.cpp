#include <iostream>

#include "cli.hpp"
#include "ci/common/io.hpp"

namespace ci::cli {

crypto::Rng& rng(const Globals& g) {
  if (!g.seed) return crypto::system_rng();
  static crypto::DeterministicRng seeded(*g.seed);
  return seeded;
}

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParse:
    case ErrorCode::kKeyFormat: return 2;
    case ErrorCode::kIo:
    case ErrorCode::kCorruption: return 3;
    case ErrorCode::kSequencing: return 4;
    case ErrorCode::kRejected:
    case ErrorCode::kBadSignature:
    case ErrorCode::kRecency:
    case ErrorCode::kUnknownCycle:
    case ErrorCode::kRegistration:
    case ErrorCode::kExpired: return 5;
    case ErrorCode::kNetwork: return 6;
    case ErrorCode::kNotFound: return 7;
    case ErrorCode::kEvidenceRejected: return 8;
    case ErrorCode::kEncoding:
    case ErrorCode::kParameter:
    case ErrorCode::kCapacity: return 9;
  }
  return 9;
}

Bytes read_input(const std::filesystem::path& path) { return read_file(path); }

std::string hex(ByteView data) { return to_hex(data); }

}  // namespace ci::cli

namespace {

constexpr const char* kExitTable = R"(exit codes:
  0   success / ACCEPT          2  parse error        3  i/o or corrupt state
  4   sequencing error          5  rejected by peer   6  network error
  7   not found                 8  evidence rejected  9  other error
  10  BAD_CONTRACT   11 BAD_CERT_SIG   12 CERT_NOT_IN_LIST  13 BAD_VOUCHER_SIG
  14  UPDATE_LATE    15 BAD_MERKLE_PATH 16 VOUCHER_MISMATCH 17 BAD_TLS_SIG
  18  DOMAIN_MISMATCH 19 OUTSIDE_TERM  20 NOT_ROGUE         64 usage error)";

}  // namespace

int main(int argc, char** argv) {
  using namespace ci::cli;
  CLI::App app{"Connection insurance: insurer, client, judge, simulator and estimator"};
  app.footer(kExitTable);
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "INI/TOML style key=value file supplying option defaults");

  Registry reg;
  app.add_flag("--json", reg.globals.json_output, "Machine-readable output");
  app.add_option("--seed", reg.globals.seed, "Draw all randomness from this seed (reproducible runs)");

  add_insurer_commands(app, reg);
  add_client_commands(app, reg);
  add_server_commands(app, reg);
  add_judge_commands(app, reg);
  add_estimate_commands(app, reg);
  add_simulate_commands(app, reg);
  add_bench_commands(app, reg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  Result result;
  try {
    for (auto& [cmd, action] : reg.actions) {
      if (cmd->parsed()) {
        result = action();
        break;
      }
    }
  } catch (const ci::Error& e) {
    result.code = exit_code(e.code());
    result.data = {{"error", std::string(ci::error_code_name(e.code()))}, {"message", e.what()}};
    result.text.clear();
    std::cerr << "error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    result.code = 9;
    result.data = {{"error", "internal"}, {"message", e.what()}};
    result.text.clear();
    std::cerr << "error: " << e.what() << "\n";
  }

  if (reg.globals.json_output) {
    std::cout << result.data.dump(2) << "\n";
  } else if (!result.text.empty()) {
    std::cout << result.text;
    if (result.text.back() != '\n') std::cout << "\n";
  }
  return result.code;
}

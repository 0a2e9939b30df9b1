#include <sstream>

#include "cli.hpp"
#include "ci/common/io.hpp"
#include "ci/estimator/storage.hpp"
#include "ci/sim/bench.hpp"
#include "ci/sim/scenario.hpp"

namespace ci::cli {

void add_estimate_commands(CLI::App& app, Registry& reg) {
  auto* estimate = app.add_subcommand("estimate", "Storage estimates");
  estimate->require_subcommand(1);
  auto p = std::make_shared<estimator::EstimatorParams>();
  auto preset = std::make_shared<std::string>();
  auto* storage = estimate->add_subcommand("storage", "Yearly storage for certificate lists and vouchers");
  storage->add_option("--preset", *preset, "hourly | daily cycle cadence")->check(CLI::IsMember({"hourly", "daily"}));
  storage->add_option("--n", p->n, "Listed domains")->capture_default_str();
  storage->add_option("--s-cert", p->s_cert, "Bytes per certificate")->capture_default_str();
  storage->add_option("--k", p->k, "Mean certificate validity in days")->capture_default_str();
  storage->add_option("--v-day", p->v_day, "Vouchers per day")->capture_default_str();
  storage->add_option("--s-voucher-customer", p->s_voucher_customer, "Customer bytes per voucher")
      ->capture_default_str();
  storage->add_option("--s-voucher-insurer", p->s_voucher_insurer, "Insurer bytes per cycle")->capture_default_str();
  storage->add_option("--cycle-overhead", p->cycle_overhead, "Customer bytes per cycle")->capture_default_str();
  storage->add_option("--cycles", p->cycles_per_day, "Cycles per day")->capture_default_str();
  storage->add_option("--customers", p->customers, "Insured customers")->capture_default_str();
  storage->add_option("--retention-days", p->retention_days, "Retention window")->capture_default_str();
  reg.add(storage, [p, preset, storage] {
    estimator::EstimatorParams params = *p;
    if (!preset->empty() && storage->count("--cycles") == 0) {
      params.cycles_per_day = estimator::preset(*preset).cycles_per_day;
    }
    const auto report = estimator::estimate_storage(params);
    Result r;
    r.text = estimator::render_table(report);
    r.data["params"] = {{"n", params.n},
                        {"s_cert", params.s_cert},
                        {"k", params.k},
                        {"v_day", params.v_day},
                        {"s_voucher_customer", params.s_voucher_customer},
                        {"s_voucher_insurer", params.s_voucher_insurer},
                        {"cycle_overhead", params.cycle_overhead},
                        {"cycles_per_day", params.cycles_per_day},
                        {"customers", params.customers},
                        {"retention_days", params.retention_days}};
    r.data["estimates"] = json::array();
    for (const auto& row : report.rows) {
      r.data["estimates"].push_back({{"name", row.name},
                                     {"bytes", row.bytes},
                                     {"decimal", estimator::format_decimal(row.bytes)},
                                     {"binary", estimator::format_binary(row.bytes)},
                                     {"reference", row.reference},
                                     {"note", row.note}});
    }
    return r;
  });
}

void add_simulate_commands(CLI::App& app, Registry& reg) {
  auto cfg = std::make_shared<sim::ScenarioConfig>();
  auto scenario = std::make_shared<std::string>("honest");
  auto claim_out = std::make_shared<std::string>();
  auto* simulate = app.add_subcommand("simulate", "Deterministic in-process insurer/client/server run");
  simulate->add_option("--scenario", *scenario, "honest | mitm")
      ->check(CLI::IsMember({"honest", "mitm"}))
      ->capture_default_str();
  simulate->add_option("--cycles", cfg->cycles, "Update cycles")->capture_default_str()->check(CLI::PositiveNumber);
  simulate->add_option("--domains", cfg->domains, "Simulated servers")->capture_default_str()->check(CLI::PositiveNumber);
  simulate->add_option("--rogue-cycle", cfg->rogue_cycle, "Cycle using the rogue certificate")->capture_default_str();
  simulate->add_option("--interval", cfg->max_update_interval, "ΔT in seconds")->capture_default_str();
  simulate->add_flag("--late", cfg->late, "Submit the rogue cycle one second after ΔT");
  simulate->add_option("--claim-out", *claim_out, "Write the claim file here (mitm)");
  reg.add(simulate, [cfg, scenario, claim_out, &reg] {
    sim::ScenarioConfig c = *cfg;
    c.kind = *scenario == "mitm" ? sim::ScenarioKind::kMitm : sim::ScenarioKind::kHonest;
    if (reg.globals.seed) c.seed = *reg.globals.seed;
    const auto report = sim::run_scenario(c);
    Result r;
    std::ostringstream text;
    r.data["scenario"] = *scenario;
    r.data["seed"] = c.seed;
    r.data["cycles"] = json::array();
    for (const auto& cy : report.cycles) {
      r.data["cycles"].push_back({{"index", cy.index},
                                  {"cycle_id", cy.cycle_id.hex()},
                                  {"list_size", cy.list_size},
                                  {"vouchers", cy.vouchers},
                                  {"warnings", cy.warnings},
                                  {"covered", cy.covered},
                                  {"insurer_covered", cy.insurer_covered}});
      text << "cycle " << cy.index << " " << cy.cycle_id.hex().substr(0, 16) << " |C|=" << cy.list_size
           << " vouchers=" << cy.vouchers << (cy.covered ? " covered" : " uncovered") << "\n";
    }
    r.data["records"] = report.records;
    r.data["cycle_ids_distinct"] = report.cycle_ids_distinct();
    r.data["claims"] = report.claim ? 1 : 0;
    text << "insurer records: " << report.records << "\nclaims: " << (report.claim ? 1 : 0) << "\n";
    if (report.claim) {
      const std::string verdict(judge::verdict_name(*report.verdict));
      r.data["target_domain"] = report.target_domain;
      r.data["verdict"] = verdict;
      text << "claim for " << report.target_domain << ": " << verdict << "\n";
      r.code = judge::verdict_exit_code(*report.verdict);
      if (!claim_out->empty()) {
        const std::string key_file = *claim_out + ".insurer.pub";
        write_file_atomic(*claim_out, report.claim->encode());
        write_file_atomic(key_file, report.insurer_key.encode());
        r.data["claim_file"] = *claim_out;
        r.data["insurer_key_file"] = key_file;
        text << "claim written to " << *claim_out << ", insurer key to " << key_file << "\n";
      }
    }
    r.text = text.str();
    return r;
  });
}

void add_bench_commands(CLI::App& app, Registry& reg) {
  auto* bench = app.add_subcommand("bench", "Benchmarks");
  bench->require_subcommand(1);
  auto iterations = std::make_shared<std::size_t>(1000);
  auto* chameleon = bench->add_subcommand("chameleon", "Mean chameleon sign/verify time, production group");
  chameleon->add_option("--iterations", *iterations, "At least 100")
      ->capture_default_str()
      ->check(CLI::Range(std::size_t{100}, std::size_t{10'000'000}));
  reg.add(chameleon, [iterations, &reg] {
    const auto b = sim::bench_chameleon(*iterations, rng(reg.globals));
    Result r;
    r.code = b.all_verified ? kExitOk : 9;
    r.data = {{"iterations", b.iterations},
              {"mean_sign_ms", b.mean_sign_ms},
              {"mean_verify_ms", b.mean_verify_ms},
              {"total_seconds", b.total_seconds},
              {"all_verified", b.all_verified}};
    char line[160];
    std::snprintf(line, sizeof line, "iterations %zu: mean sign %.3f ms, mean verify %.3f ms (%s)\n", b.iterations,
                  b.mean_sign_ms, b.mean_verify_ms, b.all_verified ? "all verified" : "VERIFY FAILURES");
    r.text = line;
    return r;
  });
}

}  // namespace ci::cli

#include <csignal>
#include <fstream>
#include <iostream>

#include "cli.hpp"
#include "ci/common/io.hpp"
#include "ci/insurer/service.hpp"
#include "ci/model/claim.hpp"
#include "ci/net/tcp.hpp"

namespace ci::cli {

namespace {

struct InsurerOptions {
  std::string dir;
  std::vector<std::string> certs;
  std::uint64_t recency_window = 300;
  std::uint64_t policy_days = 365;
  std::uint64_t max_update_interval = model::kSecondsPerDay;
};

insurer::InsurerConfig make_config(const InsurerOptions& o) {
  insurer::InsurerConfig c;
  c.recency_window = o.recency_window;
  c.policy_length = o.policy_days * model::kSecondsPerDay;
  c.default_max_update_interval = o.max_update_interval;
  return c;
}

void add_policy_options(CLI::App* cmd, InsurerOptions& o) {
  cmd->add_option("--recency-window", o.recency_window, "Accepted timestamp skew in seconds")->capture_default_str();
  cmd->add_option("--policy-days", o.policy_days, "Contract term in days")->capture_default_str();
  cmd->add_option("--max-update-interval", o.max_update_interval, "Default ΔT in seconds")->capture_default_str();
}

wire::CertificateList read_certs(const std::vector<std::string>& paths) {
  wire::CertificateList out;
  for (const auto& p : paths) out.push_back(read_input(p));
  return out;
}

std::atomic<net::TcpServer*> g_server{nullptr};

extern "C" void on_signal(int) {
  if (auto* s = g_server.load()) s->stop();
}

json record_json(const insurer::ChameleonRecord& rec) {
  return {{"customer", rec.customer.value},
          {"message", hex(rec.message)},
          {"randomizer", rec.randomizer.to_hex()},
          {"chameleon_hash", rec.chameleon_value.to_hex()}};
}

}  // namespace

void add_insurer_commands(CLI::App& app, Registry& reg) {
  auto* insurer_cmd = app.add_subcommand("insurer", "Insurer service");
  insurer_cmd->require_subcommand(1);
  auto opts = std::make_shared<InsurerOptions>();

  auto* init = insurer_cmd->add_subcommand("init", "Create keys and the initial insured certificate list");
  init->add_option("--dir", opts->dir, "State directory")->required();
  init->add_option("certs", opts->certs, "DER certificate files")->required()->check(CLI::ExistingFile);
  add_policy_options(init, *opts);
  reg.add(init, [opts, &reg] {
    auto service =
        insurer::InsurerService::setup(read_certs(opts->certs), rng(reg.globals), system_clock(), make_config(*opts));
    service.persist_to(opts->dir);
    Result r;
    r.data = {{"dir", opts->dir},
              {"public_key", insurer::insurer_public_key_path(opts->dir).string()},
              {"certificates", opts->certs.size()}};
    r.text = "insurer initialised in " + opts->dir + " with " + std::to_string(opts->certs.size()) +
             " certificates; public key " + insurer::insurer_public_key_path(opts->dir).string();
    return r;
  });

  auto listen = std::make_shared<std::string>("127.0.0.1:7400");
  auto port_file = std::make_shared<std::string>();
  auto* serve = insurer_cmd->add_subcommand("serve", "Serve REGISTER/BEGIN_CYCLE/ACK_CERTS/SUBMIT_VOUCHERS/LOOKUP_RECORD");
  serve->add_option("--dir", opts->dir, "State directory")->required()->check(CLI::ExistingDirectory);
  serve->add_option("--listen", *listen, "host:port (port 0 picks a free port)")->capture_default_str();
  serve->add_option("--port-file", *port_file, "Write the bound port to this file");
  add_policy_options(serve, *opts);
  reg.add(serve, [opts, listen, port_file, &reg] {
    auto service = insurer::InsurerService::load(opts->dir, rng(reg.globals), system_clock(), make_config(*opts));
    const auto [host, port] = net::parse_endpoint(*listen, true);
    net::TcpServer server(host, port, [&service](ByteView req) { return service.handle(req); });
    if (!port_file->empty()) {
      const std::string text = std::to_string(server.port()) + "\n";
      write_file_atomic(*port_file, as_bytes(text));
    }
    std::cerr << "insurer listening on " << host << ":" << server.port() << "\n";
    g_server.store(&server);
    std::signal(SIGINT, on_signal);
    std::signal(SIGTERM, on_signal);
    server.serve();
    g_server.store(nullptr);
    Result r;
    r.data = {{"stopped", true}};
    r.text = "insurer stopped";
    return r;
  });

  auto edit = [&](const char* name, bool adding) {
    auto* cmd = insurer_cmd->add_subcommand(name, adding ? "Add certificates to the insured list"
                                                         : "Remove certificates from the insured list");
    cmd->add_option("--dir", opts->dir, "State directory")->required()->check(CLI::ExistingDirectory);
    cmd->add_option("certs", opts->certs, "DER certificate files")->required()->check(CLI::ExistingFile);
    reg.add(cmd, [opts, adding, &reg] {
      auto service = insurer::InsurerService::load(opts->dir, rng(reg.globals), system_clock(), make_config(*opts));
      const auto certs = read_certs(opts->certs);
      const auto version = adding ? service.update_cert_list(certs, {}) : service.update_cert_list({}, certs);
      Result r;
      r.data = {{"version", version}, {"size", service.current_list().size()}};
      r.text = "certificate list version " + std::to_string(version) + " holds " +
               std::to_string(service.current_list().size()) + " certificates";
      return r;
    });
  };
  edit("add-cert", true);
  edit("remove-cert", false);

  struct LookupOptions {
    std::string ch;
    std::string digest;
    std::string claim;
    std::string which = "certs";
    std::string out;
  };
  auto lk = std::make_shared<LookupOptions>();
  auto* lookup = insurer_cmd->add_subcommand("lookup", "Find the logged message behind a chameleon hash");
  lookup->add_option("--dir", opts->dir, "State directory")->required()->check(CLI::ExistingDirectory);
  auto* by_ch = lookup->add_option("--ch", lk->ch, "Chameleon hash value, hex");
  auto* by_digest = lookup->add_option("--digest", lk->digest, "h(message), hex");
  auto* by_claim = lookup->add_option("--claim", lk->claim, "Claim whose signature is disputed")->check(CLI::ExistingFile);
  by_ch->excludes(by_digest)->excludes(by_claim);
  by_digest->excludes(by_claim);
  lookup->add_option("--which", lk->which, "certs | vouchers (with --claim)")
      ->check(CLI::IsMember({"certs", "vouchers"}))
      ->capture_default_str();
  lookup->add_option("--out", lk->out, "Write the record as TLV");
  reg.add(lookup, [opts, lk, &reg] {
    insurer::RecordQuery q;
    if (!lk->ch.empty()) {
      q = {insurer::RecordQuery::Kind::kChameleonValue, from_hex(lk->ch)};
    } else if (!lk->digest.empty()) {
      q = {insurer::RecordQuery::Kind::kMessageDigest, from_hex(lk->digest)};
    } else if (!lk->claim.empty()) {
      const auto claim = model::Claim::decode(read_input(lk->claim));
      const bool certs = lk->which == "certs";
      const Bytes payload = certs ? model::certificates_payload(claim.contract.customer, claim.cycle)
                                  : model::vouchers_payload(claim.contract.customer, claim.cycle);
      const auto& sig = certs ? claim.cycle.certs_signature : claim.cycle.vouchers_signature;
      const auto ch = crypto::chameleon_hash(claim.contract.chameleon_key, payload, sig.randomizer);
      q = {insurer::RecordQuery::Kind::kChameleonValue, ch.to_bytes_minimal()};
    } else {
      throw Error(ErrorCode::kParameter, "one of --ch, --digest or --claim is required");
    }
    auto service = insurer::InsurerService::load(opts->dir, rng(reg.globals), system_clock(), make_config(*opts));
    const auto rec = service.lookup_record(q);
    Result r;
    if (!rec) {
      r.code = 7;
      r.data = {{"found", false}};
      r.text = "no record";
      return r;
    }
    if (!lk->out.empty()) write_file_atomic(lk->out, rec->encode(service.group()));
    r.data = record_json(*rec);
    r.data["found"] = true;
    r.text = "record for customer " + std::to_string(rec->customer.value) + ", message " +
             std::to_string(rec->message.size()) + " bytes" + (lk->out.empty() ? "" : ", written to " + lk->out);
    return r;
  });
}

}  // namespace ci::cli

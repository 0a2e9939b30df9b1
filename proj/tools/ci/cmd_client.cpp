#include <memory>

#include "cli.hpp"
#include "ci/client/agent.hpp"
#include "ci/common/clock.hpp"
#include "ci/common/io.hpp"
#include "ci/insurer/service.hpp"
#include "ci/net/tcp.hpp"

namespace ci::cli {

namespace {

constexpr const char* kContractFile = "contract.tlv";

struct ClientOptions {
  std::string dir;
  std::string insurer;
  std::string insurer_dir;
  std::string insurer_key;
  std::uint64_t interval = 0;
  std::string domain;
  std::string server;
  std::string cycle;
  std::string out;
};

/// Either a TCP connection to `insurer serve` or the insurer state directory opened in-process.
struct Connection {
  std::optional<insurer::InsurerService> local;
  std::unique_ptr<insurer::Channel> channel;
  std::unique_ptr<insurer::InsurerStub> stub;
};

std::unique_ptr<Connection> connect(const ClientOptions& o, const Globals& g) {
  auto c = std::make_unique<Connection>();
  if (!o.insurer_dir.empty()) {
    c->local.emplace(insurer::InsurerService::load(o.insurer_dir, rng(g), system_clock()));
    c->channel = std::make_unique<insurer::LocalChannel>(*c->local);
  } else if (!o.insurer.empty()) {
    const auto [host, port] = net::parse_endpoint(o.insurer);
    c->channel = std::make_unique<net::TcpChannel>(host, port);
  } else {
    throw Error(ErrorCode::kParameter, "--insurer or --insurer-dir is required");
  }
  c->stub = std::make_unique<insurer::InsurerStub>(*c->channel);
  return c;
}

void add_insurer_options(CLI::App* cmd, ClientOptions& o) {
  auto* remote = cmd->add_option("--insurer", o.insurer, "Insurer endpoint host:port");
  auto* local = cmd->add_option("--insurer-dir", o.insurer_dir, "Insurer state directory, used in-process");
  remote->excludes(local);
}

client::ClientAgent load_agent(const ClientOptions& o, const Globals& g) {
  return client::ClientAgent::load(o.dir, rng(g));
}

CycleId parse_cycle(const std::string& text) {
  const Bytes b = from_hex(text);
  if (b.size() != 32) throw Error(ErrorCode::kParameter, "cycle id must be 32 bytes of hex");
  CycleId id;
  std::copy(b.begin(), b.end(), id.bytes.begin());
  return id;
}

json archived_json(const client::ArchivedCycle& a) {
  return {{"index", a.index},
          {"cycle_id", a.cycle_id.hex()},
          {"list_size", a.list_size},
          {"vouchers", a.evidence.size()},
          {"downloaded_at", a.downloaded_at},
          {"submitted_at", a.submitted_at},
          {"voucher_root", hex(a.voucher_root)},
          {"covered", a.covered},
          {"insurer_covered", a.insurer_covered}};
}

}  // namespace

void add_client_commands(CLI::App& app, Registry& reg) {
  auto* client_cmd = app.add_subcommand("client", "Customer agent");
  client_cmd->require_subcommand(1);
  auto o = std::make_shared<ClientOptions>();
  const Globals& g = reg.globals;

  auto* reg_cmd = client_cmd->add_subcommand("register", "Create keys if needed and obtain a contract");
  reg_cmd->add_option("--dir", o->dir, "Client state directory")->required();
  reg_cmd->add_option("--insurer-key", o->insurer_key, "Insurer public key file")->required()->check(CLI::ExistingFile);
  reg_cmd->add_option("--interval", o->interval, "Requested ΔT in seconds (0 = insurer default)");
  add_insurer_options(reg_cmd, *o);
  reg.add(reg_cmd, [o, &g] {
    const auto insurer_key = crypto::SigPublicKey::decode(read_input(o->insurer_key));
    auto conn = connect(*o, g);
    auto agent = std::filesystem::exists(std::filesystem::path(o->dir) / "state.tlv")
                     ? load_agent(*o, g)
                     : client::ClientAgent::create(rng(g));
    const auto& contract = agent.register_with(*conn->stub, insurer_key, o->interval);
    agent.save(o->dir);
    const auto contract_path = std::filesystem::path(o->dir) / kContractFile;
    write_file_atomic(contract_path, contract.encode());
    Result r;
    r.data = {{"customer", contract.customer.value},
              {"valid_from", contract.valid_from},
              {"valid_until", contract.valid_until},
              {"max_update_interval", contract.max_update_interval},
              {"contract", contract_path.string()}};
    r.text = "registered as customer " + std::to_string(contract.customer.value) + "; contract written to " +
             contract_path.string();
    return r;
  });

  auto* update = client_cmd->add_subcommand("update", "Download the certificate list and open a cycle");
  update->add_option("--dir", o->dir, "Client state directory")->required()->check(CLI::ExistingDirectory);
  add_insurer_options(update, *o);
  reg.add(update, [o, &g] {
    auto agent = load_agent(*o, g);
    auto conn = connect(*o, g);
    const auto& open = agent.do_update_cycle(*conn->stub, system_clock().now());
    agent.save(o->dir);
    Result r;
    r.data = {{"index", open.index},
              {"cycle_id", open.cycle_id.hex()},
              {"list_size", agent.current_list().size()},
              {"downloaded_at", open.downloaded_at}};
    r.text = "cycle " + std::to_string(open.index) + " open: " + open.cycle_id.hex() + " (" +
             std::to_string(agent.current_list().size()) + " certificates)";
    return r;
  });

  auto* browse = client_cmd->add_subcommand("browse", "Connect to a simulated server and keep voucher evidence");
  browse->add_option("--dir", o->dir, "Client state directory")->required()->check(CLI::ExistingDirectory);
  browse->add_option("--domain", o->domain, "Host name being visited")->required();
  browse->add_option("--server", o->server, "Server identity file")->required()->check(CLI::ExistingFile);
  reg.add(browse, [o, &g] {
    auto agent = load_agent(*o, g);
    const auto server = tls::SimServer::decode(read_input(o->server));
    const auto result = agent.browse(o->domain, server, system_clock().now());
    agent.save(o->dir);
    Result r;
    r.data = {{"domain", o->domain},
              {"status", std::string(client::browse_status_name(result.status))},
              {"warning", result.warning}};
    r.text = o->domain + ": " + std::string(client::browse_status_name(result.status)) +
             (result.warning.empty() ? "" : " (" + result.warning + ")");
    return r;
  });

  auto* submit = client_cmd->add_subcommand("submit", "Submit the voucher tree root and close the cycle");
  submit->add_option("--dir", o->dir, "Client state directory")->required()->check(CLI::ExistingDirectory);
  add_insurer_options(submit, *o);
  reg.add(submit, [o, &g] {
    auto agent = load_agent(*o, g);
    if (!agent.open_cycle()) throw Error(ErrorCode::kSequencing, "no open cycle to submit");
    auto conn = connect(*o, g);
    const auto& a = agent.submit_cycle(*conn->stub, system_clock().now());
    agent.save(o->dir);
    Result r;
    r.data = archived_json(a);
    r.text = "cycle " + std::to_string(a.index) + " submitted with " + std::to_string(a.evidence.size()) +
             " vouchers in a " + std::to_string(a.list_size) + "-leaf tree; " + (a.covered ? "covered" : "NOT covered");
    return r;
  });

  auto* claim = client_cmd->add_subcommand("claim", "Assemble a claim file for a vouched connection");
  claim->add_option("--dir", o->dir, "Client state directory")->required()->check(CLI::ExistingDirectory);
  claim->add_option("--domain", o->domain, "Host name of the insured connection")->required();
  claim->add_option("--cycle", o->cycle, "Cycle id (hex); defaults to the newest cycle vouching the domain");
  claim->add_option("--out", o->out, "Output claim file")->required();
  reg.add(claim, [o, &g] {
    auto agent = load_agent(*o, g);
    CycleId id;
    if (!o->cycle.empty()) {
      id = parse_cycle(o->cycle);
    } else {
      const auto& archive = agent.archive();
      auto it = std::find_if(archive.rbegin(), archive.rend(), [&](const client::ArchivedCycle& a) {
        return std::any_of(a.evidence.begin(), a.evidence.end(),
                           [&](const model::VoucherEvidence& e) { return e.voucher.domain == o->domain; });
      });
      if (it == archive.rend()) throw Error(ErrorCode::kNotFound, "no archived voucher for " + o->domain);
      id = it->cycle_id;
    }
    const auto c = agent.assemble_claim(id, o->domain);
    write_file_atomic(o->out, c.encode());
    Result r;
    r.data = {{"claim", o->out}, {"cycle_id", id.hex()}, {"domain", o->domain}, {"cert_index", c.cert_index}};
    r.text = "claim for " + o->domain + " in cycle " + id.hex() + " written to " + o->out;
    return r;
  });

  auto* status = client_cmd->add_subcommand("status", "Show contract, open cycle and archive");
  status->add_option("--dir", o->dir, "Client state directory")->required()->check(CLI::ExistingDirectory);
  reg.add(status, [o, &g] {
    auto agent = load_agent(*o, g);
    Result r;
    r.data["registered"] = agent.registered();
    std::string text = agent.registered() ? "customer " + std::to_string(agent.contract().customer.value) + "\n"
                                          : "not registered\n";
    if (agent.registered()) r.data["customer"] = agent.contract().customer.value;
    if (const auto& open = agent.open_cycle()) {
      r.data["open_cycle"] = {{"index", open->index}, {"cycle_id", open->cycle_id.hex()},
                              {"vouchers", open->vouchers.size()}};
      text += "open cycle " + std::to_string(open->index) + " " + open->cycle_id.hex() + " with " +
              std::to_string(open->vouchers.size()) + " vouchers\n";
    }
    r.data["archive"] = json::array();
    for (const auto& a : agent.archive()) {
      r.data["archive"].push_back(archived_json(a));
      text += "cycle " + std::to_string(a.index) + " " + a.cycle_id.hex() + " vouchers=" +
              std::to_string(a.evidence.size()) + (a.covered ? " covered" : " uncovered") + "\n";
    }
    r.text = text;
    return r;
  });
}

}  // namespace ci::cli

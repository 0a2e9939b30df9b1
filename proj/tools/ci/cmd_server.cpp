#include "cli.hpp"
#include "ci/common/clock.hpp"
#include "ci/common/io.hpp"
#include "ci/tls/handshake.hpp"

namespace ci::cli {

namespace {

constexpr const char* kCaKeyFile = "ca.key";
constexpr const char* kCaName = "Simulated Root CA";

tls::SimCertificateAuthority open_ca(const std::filesystem::path& dir, crypto::Rng& rng) {
  const auto key_path = dir / kCaKeyFile;
  if (std::filesystem::exists(key_path)) {
    return {kCaName, crypto::PrivateKey::from_der(read_input(key_path))};
  }
  std::filesystem::create_directories(dir);
  auto key = crypto::PrivateKey::generate(crypto::ServerKeyType::kEd25519, rng);
  write_file_atomic(key_path, key.to_der());
  return {kCaName, std::move(key)};
}

}  // namespace

void add_server_commands(CLI::App& app, Registry& reg) {
  auto* server_cmd = app.add_subcommand("server", "Simulated web servers");
  server_cmd->require_subcommand(1);

  struct Options {
    std::string domain;
    std::string ca_dir;
    std::string out;
    std::string cert_out;
    std::string key_type = "ed25519";
    bool mitm = false;
  };
  auto o = std::make_shared<Options>();
  auto* create = server_cmd->add_subcommand("create", "Issue a certificate and write a server identity file");
  create->add_option("--domain", o->domain, "Host name in the certificate")->required();
  create->add_option("--ca-dir", o->ca_dir, "Issuer directory (created on first use)")->required();
  create->add_option("--out", o->out, "Server identity file")->required();
  create->add_option("--cert-out", o->cert_out, "Also write the certificate as DER");
  create->add_option("--key-type", o->key_type, "ed25519 | rsa")
      ->check(CLI::IsMember({"ed25519", "rsa"}))
      ->capture_default_str();
  create->add_flag("--mitm", o->mitm, "Mark as an attacker impersonating --domain with its own key");
  reg.add(create, [o, &reg] {
    auto& r = rng(reg.globals);
    const auto ca = open_ca(o->ca_dir, r);
    const auto type = o->key_type == "rsa" ? crypto::ServerKeyType::kRsa2048 : crypto::ServerKeyType::kEd25519;
    auto key = crypto::PrivateKey::generate(type, r);
    const Bytes cert = ca.issue(o->domain, key, r.uniform(1ull << 62) + 1, system_clock().now());
    const auto server = o->mitm ? tls::SimServer::mitm(o->domain, cert, std::move(key))
                                : tls::SimServer(o->domain, cert, std::move(key));
    write_file_atomic(o->out, server.encode());
    if (!o->cert_out.empty()) write_file_atomic(o->cert_out, cert);
    Result res;
    res.data = {{"domain", o->domain}, {"server", o->out}, {"certificate", o->cert_out}, {"mitm", o->mitm}};
    res.text = std::string(o->mitm ? "attacker" : "server") + " for " + o->domain + " written to " + o->out;
    return res;
  });
}

}  // namespace ci::cli

#include "cli.hpp"
#include "ci/judge/judge.hpp"

namespace ci::cli {

void add_judge_commands(CLI::App& app, Registry& reg) {
  auto* judge_cmd = app.add_subcommand("judge", "Offline dispute verifier");
  judge_cmd->require_subcommand(1);

  struct Options {
    std::string claim;
    std::string insurer_key;
    bool assert_rogue = false;
    std::string which = "certs";
    std::string record;
  };
  auto o = std::make_shared<Options>();

  auto* verify = judge_cmd->add_subcommand("verify", "Verify an insurance-case claim");
  verify->add_option("claim", o->claim, "Claim file")->required()->check(CLI::ExistingFile);
  verify->add_option("--insurer-key", o->insurer_key, "Insurer public key file")->required()->check(CLI::ExistingFile);
  verify->add_flag("--assert-rogue", o->assert_rogue, "The certificate is established to be rogue");
  reg.add(verify, [o] {
    const auto key = crypto::SigPublicKey::decode(read_input(o->insurer_key));
    const auto verdict = judge::verify_claim_bytes(read_input(o->claim), key, o->assert_rogue);
    Result r;
    r.code = judge::verdict_exit_code(verdict);
    r.data = {{"verdict", std::string(judge::verdict_name(verdict))}, {"exit_code", r.code}};
    r.text = std::string(judge::verdict_name(verdict));
    return r;
  });

  auto* resolve = judge_cmd->add_subcommand("resolve", "Rule on a disputed chameleon signature inside a claim");
  resolve->add_option("--claim", o->claim, "Claim carrying the disputed signature")->required()->check(CLI::ExistingFile);
  resolve->add_option("--which", o->which, "certs | vouchers")
      ->check(CLI::IsMember({"certs", "vouchers"}))
      ->capture_default_str();
  resolve->add_option("--record", o->record, "Record produced by the insurer (insurer lookup --out)")
      ->check(CLI::ExistingFile);
  reg.add(resolve, [o] {
    model::Claim claim;
    try {
      claim = model::Claim::decode(read_input(o->claim));
    } catch (const Error& e) {
      throw Error(ErrorCode::kParse, std::string("malformed claim: ") + e.what());
    }
    const bool certs = o->which == "certs";
    const Bytes message = certs ? model::certificates_payload(claim.contract.customer, claim.cycle)
                                : model::vouchers_payload(claim.contract.customer, claim.cycle);
    std::optional<insurer::ChameleonRecord> record;
    if (!o->record.empty()) record = insurer::ChameleonRecord::decode(read_input(o->record));
    const auto ruling = judge::resolve_denial(
        claim.contract, message, certs ? claim.cycle.certs_signature : claim.cycle.vouchers_signature, record);
    Result r;
    r.data = {{"ruling", std::string(judge::ruling_name(ruling))}};
    r.text = std::string(judge::ruling_name(ruling));
    return r;
  });
}

}  // namespace ci::cli

#include "ci/sim/bench.hpp"

#include <chrono>

#include "ci/common/error.hpp"
#include "ci/crypto/chameleon.hpp"
#include "ci/wire/payload.hpp"

namespace ci::sim {

ChameleonBench bench_chameleon(std::size_t iterations, crypto::Rng& rng, const crypto::GroupParams& group) {
  if (iterations == 0) throw Error(ErrorCode::kParameter, "iterations must be positive");
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  const auto signer = crypto::generate_sig_keypair(rng);
  const auto signer_pk = signer.public_part();
  const auto recipient = crypto::ChameleonKeyPair::generate(group, rng);
  const crypto::SignatureContext ctx{CustomerId{1}, std::string(wire::kLabelCertificates)};

  ChameleonBench out;
  out.iterations = iterations;
  Clock::duration sign_total{};
  Clock::duration verify_total{};
  for (std::size_t i = 0; i < iterations; ++i) {
    CycleId cycle;
    cycle.bytes = rng.array<32>();
    const Bytes payload = wire::encode_signed_payload(wire::kLabelCertificates, ctx.customer, cycle, i,
                                                      rng.array<32>());
    const auto s0 = Clock::now();
    const auto sig = crypto::chameleon_sign(signer, recipient.public_key, payload, ctx, rng);
    const auto s1 = Clock::now();
    const bool ok = crypto::chameleon_verify(signer_pk, recipient.public_key, payload, sig, ctx);
    const auto s2 = Clock::now();
    sign_total += s1 - s0;
    verify_total += s2 - s1;
    out.all_verified = out.all_verified && ok;
  }
  const auto ms = [&](Clock::duration d) {
    return std::chrono::duration<double, std::milli>(d).count() / static_cast<double>(iterations);
  };
  out.mean_sign_ms = ms(sign_total);
  out.mean_verify_ms = ms(verify_total);
  out.total_seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return out;
}

}  // namespace ci::sim

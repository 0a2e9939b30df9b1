#include "ci/tls/transcript.hpp"

#include "ci/common/error.hpp"
#include "ci/wire/tlv.hpp"

namespace ci::tls {

using wire::Tag;

Bytes HandshakeTranscript::signed_params_input() const {
  Bytes out;
  out.reserve(64 + server_dh_params.size());
  append(out, client_random);
  append(out, server_random);
  append(out, server_dh_params);
  return out;
}

Bytes HandshakeTranscript::encode() const {
  const std::uint8_t alg[2] = {sig_alg.hash, sig_alg.signature};
  return wire::TlvWriter()
      .bytes(Tag::kRandom, client_random)
      .bytes(Tag::kRandom, server_random)
      .bytes(Tag::kDhParams, server_dh_params)
      .bytes(Tag::kSigAlg, alg)
      .bytes(Tag::kSignature, signature)
      .finish(Tag::kHandshakeTranscript);
}

HandshakeTranscript HandshakeTranscript::decode(ByteView encoded) {
  wire::TlvReader r(wire::open_record(encoded, Tag::kHandshakeTranscript));
  HandshakeTranscript t;
  t.client_random = r.fixed<32>(Tag::kRandom);
  t.server_random = r.fixed<32>(Tag::kRandom);
  const ByteView dh = r.bytes(Tag::kDhParams);
  t.server_dh_params.assign(dh.begin(), dh.end());
  const ByteView alg = r.bytes(Tag::kSigAlg);
  if (alg.size() != 2) throw Error(ErrorCode::kParse, "signature algorithm must be 2 bytes");
  t.sig_alg = {alg[0], alg[1]};
  const ByteView sig = r.bytes(Tag::kSignature);
  t.signature.assign(sig.begin(), sig.end());
  r.expect_end();
  return t;
}

}  // namespace ci::tls

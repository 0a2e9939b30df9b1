#pragma once

#include <array>

#include "ci/common/bytes.hpp"
#include "ci/crypto/pki.hpp"

namespace ci::tls {

using Random = std::array<std::uint8_t, 32>;

/// The ServerKeyExchange fragment of a TLS 1.2 DHE handshake that serves as
/// connection evidence.
struct HandshakeTranscript {
  Random client_random{};
  Random server_random{};
  /// ServerDHParams: dh_p, dh_g, dh_Ys, each a 2-byte BE length-prefixed vector.
  Bytes server_dh_params;
  Bytes signature;
  crypto::SignatureAlgorithm sig_alg;

  /// Exactly client_random || server_random || server_dh_params.
  Bytes signed_params_input() const;

  Bytes encode() const;
  static HandshakeTranscript decode(ByteView encoded);
  friend bool operator==(const HandshakeTranscript&, const HandshakeTranscript&) = default;
};

}  // namespace ci::tls

#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <string>

#include "ci/insurer/protocol.hpp"

namespace ci::net {

/// Framed request/response server: each connection is served by its own
/// thread and may carry any number of requests.
class TcpServer {
 public:
  using Handler = std::function<Bytes(ByteView)>;

  /// Binds and listens; port 0 picks an ephemeral port. Throws ErrorCode::kNetwork.
  TcpServer(const std::string& host, std::uint16_t port, Handler handler);
  ~TcpServer();
  TcpServer(const TcpServer&) = delete;
  TcpServer& operator=(const TcpServer&) = delete;

  std::uint16_t port() const { return port_; }
  /// Accept loop; returns after stop().
  void serve();
  void stop();

 private:
  void serve_connection(int fd);

  int listen_fd_ = -1;
  std::uint16_t port_ = 0;
  Handler handler_;
  std::atomic<bool> stopping_{false};
  std::atomic<int> active_{0};
};

/// Client side of the framed channel.
class TcpChannel final : public insurer::Channel {
 public:
  TcpChannel(const std::string& host, std::uint16_t port);
  ~TcpChannel() override;
  TcpChannel(const TcpChannel&) = delete;
  TcpChannel& operator=(const TcpChannel&) = delete;

  Bytes call(ByteView request) override;

 private:
  int fd_ = -1;
};

/// "host:port" with host defaulting to 127.0.0.1. Port 0 only when `allow_ephemeral`.
std::pair<std::string, std::uint16_t> parse_endpoint(const std::string& endpoint, bool allow_ephemeral = false);

}  // namespace ci::net

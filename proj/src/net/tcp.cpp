#include "ci/net/tcp.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <charconv>
#include <cstring>
#include <thread>

#include "ci/common/error.hpp"
#include "ci/wire/frame.hpp"

namespace ci::net {

namespace {

[[noreturn]] void fail(const std::string& what) {
  throw Error(ErrorCode::kNetwork, what + ": " + std::strerror(errno));
}

void write_all(int fd, ByteView data) {
  std::size_t off = 0;
  while (off < data.size()) {
    const ssize_t n = ::send(fd, data.data() + off, data.size() - off, MSG_NOSIGNAL);
    if (n < 0) {
      if (errno == EINTR) continue;
      fail("send");
    }
    off += static_cast<std::size_t>(n);
  }
}

/// nullopt on orderly close before any byte of a new frame.
std::optional<Bytes> read_frame(int fd, wire::FrameDecoder& decoder) {
  std::uint8_t buf[16384];
  bool partial = false;
  for (;;) {
    if (auto frame = decoder.next()) return frame;
    const ssize_t n = ::recv(fd, buf, sizeof buf, 0);
    if (n < 0) {
      if (errno == EINTR) continue;
      fail("recv");
    }
    if (n == 0) {
      if (partial) throw Error(ErrorCode::kNetwork, "connection closed mid-frame");
      return std::nullopt;
    }
    partial = true;
    decoder.feed(ByteView(buf, static_cast<std::size_t>(n)));
  }
}

addrinfo* resolve(const std::string& host, std::uint16_t port, bool passive) {
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  if (passive) hints.ai_flags = AI_PASSIVE;
  addrinfo* res = nullptr;
  const std::string service = std::to_string(port);
  if (int rc = ::getaddrinfo(host.c_str(), service.c_str(), &hints, &res); rc != 0) {
    throw Error(ErrorCode::kNetwork, "cannot resolve " + host + ": " + ::gai_strerror(rc));
  }
  return res;
}

}  // namespace

TcpServer::TcpServer(const std::string& host, std::uint16_t port, Handler handler) : handler_(std::move(handler)) {
  addrinfo* res = resolve(host, port, true);
  for (addrinfo* ai = res; ai; ai = ai->ai_next) {
    const int fd = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
    if (fd < 0) continue;
    int one = 1;
    ::setsockopt(fd, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
    if (::bind(fd, ai->ai_addr, ai->ai_addrlen) == 0 && ::listen(fd, 64) == 0) {
      listen_fd_ = fd;
      break;
    }
    ::close(fd);
  }
  ::freeaddrinfo(res);
  if (listen_fd_ < 0) fail("cannot listen on " + host + ":" + std::to_string(port));
  sockaddr_storage addr{};
  socklen_t len = sizeof addr;
  ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&addr), &len);
  port_ = ntohs(addr.ss_family == AF_INET6 ? reinterpret_cast<sockaddr_in6*>(&addr)->sin6_port
                                           : reinterpret_cast<sockaddr_in*>(&addr)->sin_port);
}

TcpServer::~TcpServer() {
  stop();
  while (active_.load() > 0) std::this_thread::yield();
  if (listen_fd_ >= 0) ::close(listen_fd_);
}

void TcpServer::stop() { stopping_.store(true); }

void TcpServer::serve() {
  while (!stopping_.load()) {
    pollfd pfd{listen_fd_, POLLIN, 0};
    const int ready = ::poll(&pfd, 1, 200);
    if (ready < 0 && errno != EINTR) fail("poll");
    if (ready <= 0) continue;
    const int fd = ::accept(listen_fd_, nullptr, nullptr);
    if (fd < 0) continue;
    int one = 1;
    ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
    active_.fetch_add(1);
    std::thread([this, fd] {
      serve_connection(fd);
      ::close(fd);
      active_.fetch_sub(1);
    }).detach();
  }
}

void TcpServer::serve_connection(int fd) {
  try {
    wire::FrameDecoder decoder;
    while (!stopping_.load()) {
      auto request = read_frame(fd, decoder);
      if (!request) return;
      write_all(fd, wire::encode_frame(handler_(*request)));
    }
  } catch (const std::exception&) {
    // A broken connection only affects its own client.
  }
}

TcpChannel::TcpChannel(const std::string& host, std::uint16_t port) {
  addrinfo* res = resolve(host, port, false);
  for (addrinfo* ai = res; ai; ai = ai->ai_next) {
    const int fd = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
    if (fd < 0) continue;
    if (::connect(fd, ai->ai_addr, ai->ai_addrlen) == 0) {
      fd_ = fd;
      break;
    }
    ::close(fd);
  }
  ::freeaddrinfo(res);
  if (fd_ < 0) fail("cannot connect to " + host + ":" + std::to_string(port));
  int one = 1;
  ::setsockopt(fd_, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
}

TcpChannel::~TcpChannel() {
  if (fd_ >= 0) ::close(fd_);
}

Bytes TcpChannel::call(ByteView request) {
  write_all(fd_, wire::encode_frame(request));
  wire::FrameDecoder decoder;
  auto response = read_frame(fd_, decoder);
  if (!response) throw Error(ErrorCode::kNetwork, "insurer closed the connection");
  return std::move(*response);
}

std::pair<std::string, std::uint16_t> parse_endpoint(const std::string& endpoint, bool allow_ephemeral) {
  const auto colon = endpoint.rfind(':');
  std::string host = colon == std::string::npos ? "" : endpoint.substr(0, colon);
  const std::string port_text = colon == std::string::npos ? endpoint : endpoint.substr(colon + 1);
  if (host.empty()) host = "127.0.0.1";
  unsigned port = 0;
  const char* end = port_text.data() + port_text.size();
  const auto [ptr, ec] = std::from_chars(port_text.data(), end, port);
  if (ec != std::errc() || ptr != end || (port == 0 && !allow_ephemeral) || port > 65535) {
    throw Error(ErrorCode::kParameter, "bad endpoint: " + endpoint);
  }
  return {host, static_cast<std::uint16_t>(port)};
}

}  // namespace ci::net

#include <gtest/gtest.h>

#include <thread>

#include "ci/net/tcp.hpp"
#include "support.hpp"

namespace ci::net {
namespace {

using testing::code_of;

TEST(Endpoint, Parsing) {
  EXPECT_EQ(parse_endpoint("10.0.0.1:8080"), (std::pair<std::string, std::uint16_t>{"10.0.0.1", 8080}));
  EXPECT_EQ(parse_endpoint(":9000").first, "127.0.0.1");
  EXPECT_EQ(parse_endpoint("localhost:0", true).second, 0);
  EXPECT_EQ(code_of([] { parse_endpoint("localhost:0"); }), ErrorCode::kParameter);
  EXPECT_EQ(code_of([] { parse_endpoint("nohost"); }), ErrorCode::kParameter);
  EXPECT_EQ(code_of([] { parse_endpoint("h:70000"); }), ErrorCode::kParameter);
  EXPECT_EQ(code_of([] { parse_endpoint("h:12x"); }), ErrorCode::kParameter);
}

TEST(Tcp, EchoRoundTripAndConcurrency) {
  TcpServer server("127.0.0.1", 0, [](ByteView req) {
    Bytes out(req.begin(), req.end());
    std::reverse(out.begin(), out.end());
    return out;
  });
  ASSERT_NE(server.port(), 0);
  std::thread loop([&] { server.serve(); });
  std::vector<std::thread> clients;
  std::atomic<int> ok{0};
  for (int c = 0; c < 8; ++c) {
    clients.emplace_back([&, c] {
      TcpChannel ch("127.0.0.1", server.port());
      for (int i = 0; i < 20; ++i) {
        Bytes req(static_cast<std::size_t>(1 + c * 100 + i), static_cast<std::uint8_t>(i));
        req.front() = static_cast<std::uint8_t>(c);
        Bytes expect = req;
        std::reverse(expect.begin(), expect.end());
        if (ch.call(req) == expect) ok++;
      }
    });
  }
  for (auto& t : clients) t.join();
  EXPECT_EQ(ok.load(), 160);
  server.stop();
  loop.join();
}

TEST(Tcp, FullProtocolOverTheWire) {
  testing::World w;
  TcpServer server("127.0.0.1", 0, [&](ByteView req) { return w.service->handle(req); });
  std::thread loop([&] { server.serve(); });
  {
    TcpChannel ch("127.0.0.1", server.port());
    insurer::InsurerStub stub(ch);
    auto bob = client::ClientAgent::create(w.rng);
    bob.register_with(stub, w.service->public_key());
    const auto t = w.clock.now();
    bob.do_update_cycle(stub, t);
    EXPECT_EQ(bob.browse("host0.test", w.servers[0], t).status, client::BrowseStatus::kVouched);
    EXPECT_TRUE(bob.submit_cycle(stub, t + 1).insurer_covered);
    EXPECT_EQ(code_of([&] { stub.begin_cycle(CustomerId{77}); }), ErrorCode::kNotFound);
  }
  server.stop();
  loop.join();
}

TEST(Tcp, ConnectFailureIsNetworkError) {
  std::uint16_t port;
  {
    TcpServer probe("127.0.0.1", 0, [](ByteView) { return Bytes{}; });
    port = probe.port();
  }
  EXPECT_EQ(code_of([&] { TcpChannel("127.0.0.1", port); }), ErrorCode::kNetwork);
}

}  // namespace
}  // namespace ci::net

#include <gtest/gtest.h>

#include <atomic>
#include <chrono>
#include <thread>

#include <boost/asio.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/websocket.hpp>

#include "agc/server.hpp"
#include "json.hpp"

using namespace agc;
using json = nlohmann::json;
namespace net = boost::asio;
namespace beast = boost::beast;
namespace websocket = beast::websocket;
using tcp = net::ip::tcp;

namespace {

class Client {
 public:
  explicit Client(unsigned short port) : ws_(io_) {
    tcp::resolver resolver(io_);
    net::connect(ws_.next_layer(), resolver.resolve("127.0.0.1", std::to_string(port)));
    ws_.handshake("127.0.0.1", "/");
    ws_.text(true);
  }
  void send(const std::string& text) { ws_.write(net::buffer(text)); }
  json read() {
    beast::flat_buffer buf;
    ws_.read(buf);
    return json::parse(beast::buffers_to_string(buf.data()));
  }
  json read_until(const std::string& type) {
    for (;;) {
      json j = read();
      if (j["type"] == type) return j;
    }
  }
  void close() { ws_.close(websocket::close_code::normal); }

 private:
  net::io_context io_;
  websocket::stream<tcp::socket> ws_;
};

struct Running {
  explicit Running(LiveOptions opts) : live(scenario(), opts), server(live, {"127.0.0.1", 0}) {
    engine = std::thread([this] { live.run_paced([this] { return stop.load(); }); });
  }
  ~Running() {
    stop = true;
    engine.join();
    server.stop();
  }
  static Scenario scenario() {
    Scenario s;
    s.ugv_initial = {0.0, 0.0, 0.0};
    s.uav_initial = {0.0, 0.0, 3.0};
    return s;
  }
  LiveSession live;
  OperatorServer server;
  std::atomic<bool> stop{false};
  std::thread engine;
};

}  // namespace

TEST(Endpoint, Parsing) {
  auto e = parse_endpoint("0.0.0.0:9000");
  EXPECT_EQ(e.host, "0.0.0.0");
  EXPECT_EQ(e.port, 9000);
  e = parse_endpoint(":8001");
  EXPECT_EQ(e.host, "127.0.0.1");
  EXPECT_EQ(e.port, 8001);
  EXPECT_EQ(parse_endpoint("8002").port, 8002);
  EXPECT_THROW(parse_endpoint("localhost:http"), std::invalid_argument);
  EXPECT_THROW(parse_endpoint("host:70000"), std::invalid_argument);
}

TEST(Server, ConnectClickAndWatchUgvMove) {
  Running r({25, false});
  Client c(r.server.port());
  const json snap = c.read();
  EXPECT_EQ(snap["type"], "snapshot");
  // wait for the camera to have a view
  for (;;) {
    const json f = c.read_until("frame");
    if (f["tracking"] == 1 && f["t"].get<double>() > 0.2) break;
  }
  c.send(R"({"type":"click","x_px":150,"y_px":0})");
  EXPECT_EQ(c.read_until("ack")["id"], 1);
  double x = 0.0;
  for (int i = 0; i < 400 && x < 0.01; ++i) {
    const json f = c.read_until("frame");
    x = f["ugv_x"].get<double>();
  }
  EXPECT_GT(x, 0.01);
  c.close();
}

TEST(Server, MalformedMessageGetsErrorAndStreamContinues) {
  Running r({50, false});
  Client c(r.server.port());
  c.read_until("snapshot");
  c.send("{{{");
  EXPECT_EQ(c.read_until("error")["type"], "error");
  const double t0 = c.read_until("frame")["t"].get<double>();
  const double t1 = c.read_until("frame")["t"].get<double>();
  EXPECT_GT(t1, t0);
}

TEST(Server, SecondSessionIsObserverOnly) {
  Running r({50, false});
  Client a(r.server.port());
  a.read_until("snapshot");
  a.send(R"({"type":"pause"})");
  a.read_until("ack");
  Client b(r.server.port());
  EXPECT_EQ(b.read_until("snapshot")["paused"], true);
  b.send(R"({"type":"resume"})");
  EXPECT_EQ(b.read_until("error")["type"], "error");
  a.close();
  // authority is released once the holder leaves
  for (int i = 0; i < 100; ++i) {
    b.send(R"({"type":"resume"})");
    const json j = b.read();
    if (j["type"] == "ack") return;
    std::this_thread::sleep_for(std::chrono::milliseconds(10));
  }
  FAIL() << "authority never released";
}

TEST(Server, BindFailureThrows) {
  Running r({50, false});
  LiveSession other(Running::scenario(), {});
  EXPECT_ANY_THROW(OperatorServer(other, {"127.0.0.1", r.server.port()}));
}

#include "agc/server.hpp"

#include <atomic>
#include <deque>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <thread>
#include <vector>

#include <boost/asio.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/websocket.hpp>

namespace agc {

namespace net = boost::asio;
namespace beast = boost::beast;
namespace websocket = beast::websocket;
using tcp = net::ip::tcp;

Endpoint parse_endpoint(const std::string& text) {
  Endpoint ep;
  std::string port_text = text;
  const auto colon = text.rfind(':');
  if (colon != std::string::npos) {
    if (colon > 0) ep.host = text.substr(0, colon);
    port_text = text.substr(colon + 1);
  }
  std::size_t used = 0;
  unsigned long port = 0;
  try {
    port = std::stoul(port_text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != port_text.size() || port > 65535) {
    throw std::invalid_argument("invalid endpoint '" + text + "' (expected host:port)");
  }
  ep.port = static_cast<unsigned short>(port);
  return ep;
}

namespace {

class WsSession : public std::enable_shared_from_this<WsSession> {
 public:
  WsSession(tcp::socket socket, LiveSession& live, SessionId id)
      : ws_(std::move(socket)), live_(live), id_(id) {}

  void start() {
    net::dispatch(ws_.get_executor(), [self = shared_from_this()] { self->do_accept(); });
  }

  void enqueue(std::shared_ptr<const std::string> msg) {
    net::post(ws_.get_executor(), [self = shared_from_this(), msg = std::move(msg)] {
      if (self->closed_) return;
      self->queue_.push_back(msg);
      if (self->queue_.size() == 1 && self->open_) self->do_write();
    });
  }

  void close() {
    net::post(ws_.get_executor(), [self = shared_from_this()] {
      if (self->closed_) return;
      beast::error_code ec;
      beast::get_lowest_layer(self->ws_).socket().close(ec);
    });
  }

 private:
  void do_accept() {
    ws_.text(true);
    ws_.async_accept([self = shared_from_this()](beast::error_code ec) {
      if (ec) return self->finish();
      self->open_ = true;
      std::weak_ptr<WsSession> weak = self;
      self->live_.connect(self->id_, [weak](std::shared_ptr<const std::string> msg) {
        if (auto s = weak.lock()) s->enqueue(std::move(msg));
      });
      if (!self->queue_.empty()) self->do_write();
      self->do_read();
    });
  }

  void do_read() {
    ws_.async_read(buffer_, [self = shared_from_this()](beast::error_code ec, std::size_t) {
      if (ec) return self->finish();
      self->live_.submit(self->id_, beast::buffers_to_string(self->buffer_.data()));
      self->buffer_.consume(self->buffer_.size());
      self->do_read();
    });
  }

  void do_write() {
    ws_.async_write(net::buffer(*queue_.front()),
                    [self = shared_from_this()](beast::error_code ec, std::size_t) {
                      if (ec) return self->finish();
                      self->queue_.pop_front();
                      if (!self->queue_.empty()) self->do_write();
                    });
  }

  void finish() {
    if (closed_) return;
    closed_ = true;
    queue_.clear();
    if (open_) live_.disconnect(id_);
  }

  websocket::stream<beast::tcp_stream> ws_;
  beast::flat_buffer buffer_;
  std::deque<std::shared_ptr<const std::string>> queue_;
  LiveSession& live_;
  SessionId id_;
  bool open_ = false;
  bool closed_ = false;
};

}  // namespace

struct OperatorServer::Impl {
  Impl(LiveSession& live, const Endpoint& ep)
      : live(live), acceptor(io, tcp::endpoint(net::ip::make_address(ep.host), ep.port)) {
    bound_port = acceptor.local_endpoint().port();
    do_accept();
    thread = std::thread([this] { io.run(); });
  }

  void do_accept() {
    acceptor.async_accept(net::make_strand(io), [this](beast::error_code ec, tcp::socket socket) {
      if (ec) {
        if (ec == net::error::operation_aborted) return;
        std::cerr << "accept failed: " << ec.message() << "\n";
      } else {
        auto s = std::make_shared<WsSession>(std::move(socket), live, ++next_id);
        sessions.push_back(s);
        s->start();
      }
      do_accept();
    });
  }

  void stop() {
    if (stopped.exchange(true)) return;
    net::post(io, [this] {
      beast::error_code ec;
      acceptor.close(ec);
      for (auto& w : sessions) {
        if (auto s = w.lock()) s->close();
      }
    });
    work.reset();
    io.stop();
    if (thread.joinable()) thread.join();
  }

  LiveSession& live;
  net::io_context io;
  std::optional<net::executor_work_guard<net::io_context::executor_type>> work{io.get_executor()};
  tcp::acceptor acceptor;
  std::vector<std::weak_ptr<WsSession>> sessions;
  SessionId next_id = 0;
  unsigned short bound_port = 0;
  std::thread thread;
  std::atomic<bool> stopped{false};
};

OperatorServer::OperatorServer(LiveSession& live, const Endpoint& endpoint)
    : impl_(std::make_unique<Impl>(live, endpoint)) {}

OperatorServer::~OperatorServer() { stop(); }

unsigned short OperatorServer::port() const { return impl_->bound_port; }

void OperatorServer::stop() { impl_->stop(); }

}  // namespace agc

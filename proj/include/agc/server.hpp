#pragma once

#include <memory>
#include <string>

#include "agc/live.hpp"

namespace agc {

struct Endpoint {
  std::string host = "127.0.0.1";
  unsigned short port = 8765;
};

/// Parses "host:port", ":port" or "port". Throws std::invalid_argument.
Endpoint parse_endpoint(const std::string& text);

/// WebSocket endpoint for operator sessions. Each text message carries one
/// protocol object. Networking runs on its own thread; sessions talk to the
/// LiveSession only through its queues.
class OperatorServer {
 public:
  OperatorServer(LiveSession& live, const Endpoint& endpoint);
  ~OperatorServer();
  OperatorServer(const OperatorServer&) = delete;
  OperatorServer& operator=(const OperatorServer&) = delete;

  /// Port actually bound (useful when asking for port 0).
  unsigned short port() const;
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace agc

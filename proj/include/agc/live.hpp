#pragma once

#include <chrono>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "agc/engine.hpp"

namespace agc {

using SessionId = std::uint64_t;
/// Delivers one encoded message to a session. Must be safe to call from the
/// engine thread; messages to one session must arrive in call order.
using SessionSink = std::function<void(std::shared_ptr<const std::string>)>;

struct LiveOptions {
  int decimate = 10;  // broadcast every Nth telemetry frame
  bool pause_on_start = false;
};

/// Couples a Simulation to operator sessions. Transport threads enqueue
/// connects, disconnects and raw messages; the engine thread drains them in
/// arrival order with pump() and advances the simulation with step(). The
/// first session to send a command holds command authority until it
/// disconnects.
class LiveSession {
 public:
  LiveSession(Scenario scenario, LiveOptions options);

  // Thread-safe.
  void connect(SessionId id, SessionSink sink);
  void disconnect(SessionId id);
  void submit(SessionId id, std::string text);

  // Engine thread.
  void pump();
  StepResult step();
  bool paused() const { return paused_; }
  const Simulation& simulation() const { return sim_; }
  std::optional<SessionId> authority() const { return authority_; }
  std::size_t sessions() const { return sinks_.size(); }

  /// Receives every simulated frame (not just broadcast ones).
  void on_frame(std::function<void(const TelemetryFrame&)> fn) { frame_hook_ = std::move(fn); }
  /// Called after a reset, before the fresh snapshot is broadcast.
  void on_reset(std::function<void()> fn) { reset_hook_ = std::move(fn); }

  /// Paces step() against the wall clock until stop() returns true.
  void run_paced(const std::function<bool()>& stop,
                 std::chrono::milliseconds idle = std::chrono::milliseconds(1));

 private:
  struct Pending {
    enum class Kind { connect, disconnect, message } kind;
    SessionId id;
    SessionSink sink;
    std::string text;
  };

  void handle_message(SessionId id, const std::string& text);
  void send(SessionId id, std::string text);
  void broadcast(std::string text);
  std::string snapshot() const;

  Simulation sim_;
  LiveOptions options_;
  bool paused_ = false;
  bool pacing_reset_ = true;
  std::optional<SessionId> authority_;
  std::map<SessionId, SessionSink> sinks_;
  std::function<void(const TelemetryFrame&)> frame_hook_;
  std::function<void()> reset_hook_;

  std::mutex mutex_;
  std::deque<Pending> inbox_;
};

}  // namespace agc

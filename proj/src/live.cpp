#include "agc/live.hpp"

#include <algorithm>
#include <stdexcept>
#include <thread>
#include <type_traits>
#include <variant>

#include "agc/protocol.hpp"

namespace agc {

LiveSession::LiveSession(Scenario scenario, LiveOptions options)
    : sim_(std::move(scenario)), options_(options), paused_(options.pause_on_start) {
  if (options_.decimate < 1) throw std::invalid_argument("decimate must be >= 1");
}

void LiveSession::connect(SessionId id, SessionSink sink) {
  std::lock_guard lock(mutex_);
  inbox_.push_back({Pending::Kind::connect, id, std::move(sink), {}});
}

void LiveSession::disconnect(SessionId id) {
  std::lock_guard lock(mutex_);
  inbox_.push_back({Pending::Kind::disconnect, id, {}, {}});
}

void LiveSession::submit(SessionId id, std::string text) {
  std::lock_guard lock(mutex_);
  inbox_.push_back({Pending::Kind::message, id, {}, std::move(text)});
}

void LiveSession::pump() {
  std::deque<Pending> batch;
  {
    std::lock_guard lock(mutex_);
    batch.swap(inbox_);
  }
  for (auto& p : batch) {
    switch (p.kind) {
      case Pending::Kind::connect:
        sinks_[p.id] = std::move(p.sink);
        send(p.id, snapshot());
        break;
      case Pending::Kind::disconnect:
        sinks_.erase(p.id);
        if (authority_ == p.id) authority_.reset();
        break;
      case Pending::Kind::message:
        if (sinks_.count(p.id)) handle_message(p.id, p.text);
        break;
    }
  }
}

void LiveSession::handle_message(SessionId id, const std::string& text) {
  protocol::Inbound msg;
  try {
    msg = protocol::parse_inbound(text);
  } catch (const protocol::ProtocolError& e) {
    send(id, protocol::encode_error(e.what()));
    return;
  }
  if (authority_ && *authority_ != id) {
    send(id, protocol::encode_error("command authority is held by another session"));
    return;
  }
  authority_ = id;
  const char* kind = protocol::kind_of(msg);

  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, protocol::Click>) {
          try {
            const WaypointMsg wp = sim_.click(m.pixel);
            send(id, protocol::encode_ack(kind, wp.id));
            // waypoint_set goes out with the next step's events
          } catch (const ClickRejected& e) {
            send(id, protocol::encode_error(e.what()));
          }
        } else if constexpr (std::is_same_v<T, protocol::Pause>) {
          paused_ = true;
          send(id, protocol::encode_ack(kind, std::nullopt));
        } else if constexpr (std::is_same_v<T, protocol::Resume>) {
          if (paused_) pacing_reset_ = true;
          paused_ = false;
          send(id, protocol::encode_ack(kind, std::nullopt));
        } else if constexpr (std::is_same_v<T, protocol::Reset>) {
          sim_.reset();
          pacing_reset_ = true;
          if (reset_hook_) reset_hook_();
          send(id, protocol::encode_ack(kind, std::nullopt));
          broadcast(snapshot());
        } else if constexpr (std::is_same_v<T, protocol::SetParam>) {
          try {
            sim_.set_param(m.name, m.value);
            send(id, protocol::encode_ack(kind, std::nullopt));
          } catch (const std::exception& e) {
            send(id, protocol::encode_error(e.what()));
          }
        }
      },
      msg);
}

StepResult LiveSession::step() {
  StepResult r = sim_.step();
  if (frame_hook_) frame_hook_(r.frame);
  for (const auto& e : r.events) {
    if (e.kind == EventKind::click_rejected) continue;  // already answered to the sender
    broadcast(protocol::encode_event(e));
  }
  if (sim_.clock().step_index % options_.decimate == 0) broadcast(protocol::encode_frame(r.frame));
  return r;
}

void LiveSession::run_paced(const std::function<bool()>& stop, std::chrono::milliseconds idle) {
  using clock = std::chrono::steady_clock;
  clock::time_point anchor_wall{};
  std::int64_t anchor_step = 0;
  const double dt = sim_.scenario().dt;
  while (!stop()) {
    pump();
    if (paused_) {
      std::this_thread::sleep_for(idle);
      continue;
    }
    if (pacing_reset_) {
      anchor_wall = clock::now();
      anchor_step = sim_.clock().step_index;
      pacing_reset_ = false;
    }
    const double elapsed = std::chrono::duration<double>(clock::now() - anchor_wall).count();
    const auto target = anchor_step + static_cast<std::int64_t>(elapsed / dt);
    // Bounded catch-up keeps the inbox responsive if the host falls behind.
    const std::int64_t budget = std::max<std::int64_t>(1, static_cast<std::int64_t>(0.05 / dt));
    std::int64_t done = 0;
    while (sim_.clock().step_index < target && done < budget && !paused_) {
      step();
      ++done;
    }
    if (done == budget) {
      pacing_reset_ = true;
    } else if (done == 0) {
      std::this_thread::sleep_for(idle);
    }
  }
}

void LiveSession::send(SessionId id, std::string text) {
  auto it = sinks_.find(id);
  if (it == sinks_.end()) return;
  it->second(std::make_shared<const std::string>(std::move(text)));
}

void LiveSession::broadcast(std::string text) {
  if (sinks_.empty()) return;
  auto shared = std::make_shared<const std::string>(std::move(text));
  for (auto& [id, sink] : sinks_) sink(shared);
}

std::string LiveSession::snapshot() const {
  return protocol::encode_snapshot(sim_.scenario(), sim_.last_frame(), paused_, options_.decimate);
}

}  // namespace agc

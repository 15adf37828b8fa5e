#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "agc/perception.hpp"

namespace agc {

/// Station -> UGV payload.
struct CommandMsg {
  double t_sent = 0.0;
  double d = 0.0;      // m
  double alpha = 0.0;  // rad
  std::int64_t waypoint_id = -1;
};

/// UAV -> station payload: one camera frame's marker fix plus the altitude and
/// position the autopilot reports with it.
struct MeasurementMsg {
  double t_sent = 0.0;
  MarkerObservation obs;
  double uav_x = 0.0;
  double uav_y = 0.0;
  double uav_z = 0.0;
};

struct ChannelParams {
  double latency_mean = 0.0;    // s
  double latency_jitter = 0.0;  // s, uniform half-width
  double loss_prob = 0.0;       // [0, 1]
  double rate_hz = 50.0;        // sender tick rate
  std::uint64_t seed = 0;

  void validate(const char* name) const;
};

struct ChannelStats {
  std::uint64_t sent = 0;
  std::uint64_t dropped = 0;
  std::uint64_t delivered = 0;
};

/// Lossy, delayed, in-order link driven by simulated time.
template <typename Payload>
class Channel {
 public:
  Channel() : Channel(ChannelParams{}) {}
  explicit Channel(const ChannelParams& p) : params_(p), rng_(p.seed) {}

  void send(const Payload& payload, double now) {
    if (now < last_send_) throw std::logic_error("Channel::send: time went backwards");
    last_send_ = now;
    ++stats_.sent;
    // Both variates are drawn on every send so the loss pattern does not
    // depend on the latency settings.
    const double loss_draw = unit_(rng_);
    const double jitter_draw = 2.0 * unit_(rng_) - 1.0;
    if (loss_draw < params_.loss_prob) {
      ++stats_.dropped;
      return;
    }
    double at = now + std::max(0.0, params_.latency_mean + params_.latency_jitter * jitter_draw);
    if (!queue_.empty()) at = std::max(at, queue_.back().deliver_at);
    queue_.push_back({at, payload});
  }

  std::vector<Payload> poll(double now) {
    std::vector<Payload> out;
    while (!queue_.empty() && queue_.front().deliver_at <= now) {
      out.push_back(std::move(queue_.front().payload));
      queue_.pop_front();
    }
    stats_.delivered += out.size();
    return out;
  }

  std::size_t in_flight() const { return queue_.size(); }
  const ChannelStats& stats() const { return stats_; }
  const ChannelParams& params() const { return params_; }

  /// Earliest pending delivery time, for causality checks.
  double next_delivery() const {
    return queue_.empty() ? std::numeric_limits<double>::infinity() : queue_.front().deliver_at;
  }

 private:
  struct Entry {
    double deliver_at;
    Payload payload;
  };

  ChannelParams params_;
  std::mt19937_64 rng_;
  std::uniform_real_distribution<double> unit_{0.0, 1.0};
  std::deque<Entry> queue_;
  double last_send_ = -std::numeric_limits<double>::infinity();
  ChannelStats stats_;
};

}  // namespace agc

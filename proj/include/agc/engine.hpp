#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "agc/netlink.hpp"
#include "agc/scenario.hpp"
#include "agc/station.hpp"
#include "agc/telemetry.hpp"

namespace agc {

/// Integer-indexed simulated time: t = step_index * dt.
struct SimClock {
  std::int64_t step_index = 0;
  double dt = 0.001;
  double t() const { return static_cast<double>(step_index) * dt; }
};

struct StepResult {
  TelemetryFrame frame;
  std::vector<Event> events;
};

/// Closed loop of camera, video link, station, command link, UGV and UAV
/// stepped at a fixed dt. Single-threaded; callers serialize access.
///
/// Each step runs, in order: scripted clicks, camera frame (on frame ticks),
/// station measurement intake, station command (on 20 ms ticks), UGV command
/// intake and integration, UAV servo and inner loop, telemetry.
class Simulation {
 public:
  explicit Simulation(Scenario scenario);

  StepResult step();
  bool finished() const { return clock_.step_index >= scenario_.total_steps(); }

  /// Operator click at the current simulated time. Throws ClickRejected.
  WaypointMsg click(const PixelPoint& pixel);

  /// Live tuning of gains, limits, noise and smoothing ("section.key").
  /// Throws ConfigError for unknown or non-tunable names and invalid values.
  void set_param(std::string_view name, std::string_view value);

  /// Restart from the initial conditions of the current scenario.
  void reset();

  const Scenario& scenario() const { return scenario_; }
  const SimClock& clock() const { return clock_; }
  const UgvState& ugv() const { return ugv_; }
  const UavState& uav() const { return uav_; }
  const GroundStation& station() const { return station_; }
  const TelemetryFrame& last_frame() const { return last_frame_; }
  const ChannelStats& video_stats() const { return video_.stats(); }
  const ChannelStats& command_stats() const { return command_.stats(); }
  std::uint64_t commands_attempted() const { return commands_attempted_; }

 private:
  void init();
  bool camera_active() const;
  void deliver_measurement(const MeasurementMsg& m, double now);
  void apply_command(const CommandMsg& c, double now);
  TelemetryFrame make_frame(double t_end, bool command_sent) const;

  Scenario scenario_;
  SimClock clock_;
  std::int64_t steps_per_frame_ = 1;
  std::int64_t steps_per_command_ = 1;

  UgvState ugv_;
  UavState uav_;
  GroundStation station_;
  Channel<MeasurementMsg> video_;
  Channel<CommandMsg> command_;
  std::mt19937_64 noise_rng_;

  UgvCommand held_command_;
  double last_command_rx_ = -1.0;
  ServoError servo_;
  double last_servo_fix_ = -1.0;
  Attitude attitude_cmd_;
  std::size_t next_click_ = 0;
  std::uint64_t commands_attempted_ = 0;
  TelemetryFrame last_frame_;
};

struct RunResult {
  std::vector<TelemetryFrame> frames;
  std::vector<Event> events;
};

/// Steps the scenario to its duration, injecting scripted clicks.
RunResult run(const Scenario& scenario);

/// Ground-truth steering angle and axle distance to a world waypoint.
struct TruePose {
  double d = 0.0;
  double alpha = 0.0;
};
TruePose true_pose(const UgvState& ugv, double wx, double wy);

}  // namespace agc

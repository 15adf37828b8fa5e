#include "agc/engine.hpp"

#include <cmath>
#include <limits>

#include "agc/angles.hpp"
#include "agc/rng.hpp"

namespace agc {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

ChannelParams seeded(ChannelParams p, std::uint64_t master, std::string_view label) {
  p.seed = derive_seed(master, label);
  return p;
}

ObserveOptions observe_options(const Scenario& s) {
  return {s.ugv.L, s.tilt_projection};
}

bool live_tunable(std::string_view name) {
  static constexpr std::string_view fixed[] = {"ugv.x0", "ugv.y0", "ugv.psi0", "uav.x0",
                                               "uav.y0", "uav.z0", "smoothing.rate"};
  for (auto f : fixed) {
    if (name == f) return false;
  }
  for (std::string_view prefix : {"ugv.", "uav.", "noise.", "smoothing.", "station."}) {
    if (name.substr(0, prefix.size()) == prefix) return true;
  }
  return false;
}

}  // namespace

TruePose true_pose(const UgvState& ugv, double wx, double wy) {
  const double dx = wx - ugv.x;
  const double dy = wy - ugv.y;
  return {std::hypot(dx, dy), wrap_angle(std::atan2(dy, dx) - ugv.psi)};
}

Simulation::Simulation(Scenario scenario)
    : scenario_(std::move(scenario)),
      station_(scenario_.camera, scenario_.ugv, scenario_.station, scenario_.frame_period()) {
  scenario_.validate();
  init();
}

void Simulation::init() {
  const Scenario& s = scenario_;
  clock_ = SimClock{0, s.dt};
  steps_per_frame_ = s.steps_per_frame();
  steps_per_command_ = s.steps_per_command();
  ugv_ = s.ugv_initial;
  ugv_.psi = wrap_angle(ugv_.psi);
  uav_ = s.uav_initial;
  uav_.U1 = s.uav.hover_thrust();
  station_ = GroundStation(s.camera, s.ugv, s.station, s.frame_period());
  video_ = Channel<MeasurementMsg>(seeded(s.video_link, s.seed, "video_link"));
  command_ = Channel<CommandMsg>(seeded(s.command_link, s.seed, "command_link"));
  noise_rng_.seed(derive_seed(s.seed, "noise"));
  held_command_ = {};
  last_command_rx_ = -1.0;
  servo_ = {};
  last_servo_fix_ = -1.0;
  attitude_cmd_ = {};
  next_click_ = 0;
  commands_attempted_ = 0;
  last_frame_ = make_frame(0.0, false);
}

void Simulation::reset() { init(); }

bool Simulation::camera_active() const { return uav_.z >= scenario_.uav.z_min; }

void Simulation::deliver_measurement(const MeasurementMsg& m, double now) {
  station_.on_measurement(m, now);
}

void Simulation::apply_command(const CommandMsg& c, double now) {
  held_command_ = ugv_control(c.d, c.alpha, scenario_.ugv);
  last_command_rx_ = now;
}

WaypointMsg Simulation::click(const PixelPoint& pixel) {
  return station_.handle_click(pixel, clock_.t());
}

void Simulation::set_param(std::string_view name, std::string_view value) {
  if (!live_tunable(name)) {
    throw ConfigError(std::string(name), 0, "'" + std::string(name) + "' cannot be changed while running");
  }
  Scenario next = scenario_;
  apply_setting(next, name, value);
  next.validate();
  scenario_ = std::move(next);
  station_.set_params(scenario_.station);
  station_.set_ugv_params(scenario_.ugv);
}

StepResult Simulation::step() {
  const Scenario& s = scenario_;
  const std::int64_t k = clock_.step_index;
  const double t = clock_.t();

  // Scripted operator clicks.
  while (next_click_ < s.clicks.size() && s.clicks[next_click_].t <= t + 1e-9) {
    try {
      station_.handle_click(s.clicks[next_click_].pixel, t);
    } catch (const ClickRejected&) {
      // recorded as an event by the station
    }
    ++next_click_;
  }

  // (1) Camera frame onto the video link.
  if (k % steps_per_frame_ == 0 && camera_active()) {
    MeasurementMsg m;
    m.t_sent = t;
    m.obs = observe(ugv_, uav_, s.camera, s.noise, observe_options(s), t, noise_rng_);
    m.uav_x = uav_.x;
    m.uav_y = uav_.y;
    m.uav_z = uav_.z;
    if (s.bypass_links) deliver_measurement(m, t);
    else video_.send(m, t);
  }

  // (2) Station intake.
  if (!s.bypass_links) {
    for (const auto& m : video_.poll(t)) deliver_measurement(m, t);
  }

  // (3) 50 Hz command tick.
  bool command_sent = false;
  if (k % steps_per_command_ == 0) {
    if (station_.active_waypoint()) ++commands_attempted_;
    if (auto cmd = station_.command_tick(t)) {
      command_sent = true;
      if (s.bypass_links) apply_command(*cmd, t);
      else command_.send(*cmd, t);
    }
  }

  // (4) UGV: latest command, watchdog, integrate.
  if (!s.bypass_links) {
    for (const auto& c : command_.poll(t)) apply_command(c, t);
  }
  if (last_command_rx_ < 0.0 || t - last_command_rx_ > s.ugv.command_timeout) held_command_ = {};
  ugv_ = ugv_step(ugv_, held_command_, s.dt, s.ugv.tau_act);

  // (5) UAV visual servo and autopilot.
  const SmoothedMarker marker = station_.servo_input();
  if (marker.valid) {
    servo_ = servo_error(marker, station_.smoothing_period(), station_.altitude(), s.camera, servo_,
                         s.uav.servo_units);
    last_servo_fix_ = t;
  } else {
    servo_.stale = true;
  }
  const bool servo_usable =
      last_servo_fix_ >= 0.0 && t - last_servo_fix_ <= s.station.stale_timeout;
  if (servo_usable) {
    const double thrust = uav_.U1 > 0.0 ? uav_.U1 : s.uav.hover_thrust();
    attitude_cmd_ = desired_angles(servo_control(servo_, s.uav, thrust), s.uav.angle_max);
  } else {
    attitude_cmd_ = {};
  }
  uav_ = inner_loop_step(uav_, attitude_cmd_, s.uav, s.dt);

  // (6) Telemetry.
  ++clock_.step_index;
  StepResult out;
  out.frame = make_frame(clock_.t(), command_sent);
  out.events = station_.drain_events();
  last_frame_ = out.frame;
  return out;
}

TelemetryFrame Simulation::make_frame(double t_end, bool command_sent) const {
  TelemetryFrame f;
  f.t = t_end;
  f.ugv = ugv_;
  f.uav = uav_;
  f.phi_d = attitude_cmd_.phi;
  f.theta_d = attitude_cmd_.theta;
  f.command_sent = command_sent;
  f.tracking = camera_active();
  f.in_frame = f.tracking &&
               project_markers(ugv_, uav_, scenario_.camera, observe_options(scenario_), t_end).in_frame;
  f.waypoint_reached = station_.reached();

  const auto& wp = station_.active_waypoint();
  f.waypoint_id = wp ? wp->id : -1;
  f.waypoint_x = wp ? wp->world_x : kNaN;
  f.waypoint_y = wp ? wp->world_y : kNaN;
  const auto& raw = station_.raw_pose();
  f.raw_d = raw ? raw->d : kNaN;
  f.raw_alpha = raw ? raw->alpha : kNaN;
  f.smooth_d = station_.smoothed_d().value_or(kNaN);
  f.smooth_alpha = station_.smoothed_alpha().value_or(kNaN);

  const SmoothedMarker marker = station_.servo_input();
  f.px_err_x = marker.valid ? marker.rc.x - scenario_.camera.principal_x : kNaN;
  f.px_err_y = marker.valid ? marker.rc.y - scenario_.camera.principal_y : kNaN;
  f.servo_ex = last_servo_fix_ >= 0.0 ? servo_.e_x : kNaN;
  f.servo_ey = last_servo_fix_ >= 0.0 ? servo_.e_y : kNaN;

  if (wp) {
    const TruePose tp = true_pose(ugv_, wp->world_x, wp->world_y);
    f.true_d = tp.d;
    f.true_alpha = tp.alpha;
    const double hx = ugv_.x + scenario_.ugv.L * std::cos(ugv_.psi);
    const double hy = ugv_.y + scenario_.ugv.L * std::sin(ugv_.psi);
    f.head_d = std::hypot(wp->world_x - hx, wp->world_y - hy);
  } else {
    f.true_d = f.true_alpha = f.head_d = kNaN;
  }
  return f;
}

RunResult run(const Scenario& scenario) {
  Simulation sim(scenario);
  RunResult out;
  out.frames.reserve(static_cast<std::size_t>(scenario.total_steps()));
  while (!sim.finished()) {
    StepResult r = sim.step();
    out.frames.push_back(r.frame);
    for (auto& e : r.events) out.events.push_back(std::move(e));
  }
  return out;
}

}  // namespace agc

#include "agc/station.hpp"

#include <cmath>
#include <limits>

#include "agc/angles.hpp"

namespace agc {

const char* to_string(EventKind k) {
  switch (k) {
    case EventKind::waypoint_set: return "waypoint_set";
    case EventKind::waypoint_reached: return "waypoint_reached";
    case EventKind::frame_exit: return "frame_exit";
    case EventKind::stale_pose: return "stale_pose";
    case EventKind::click_rejected: return "click_rejected";
  }
  return "unknown";
}

void StationParams::validate() const {
  if (!(arrival_epsilon >= 0.0)) throw std::invalid_argument("station.arrival_epsilon must be non-negative");
  if (!(stale_timeout > 0.0)) throw std::invalid_argument("station.stale_timeout must be positive");
  des_d.validate("d");
  des_alpha.validate("alpha");
  des_x.validate("x");
  des_y.validate("y");
  des_z.validate("z");
}

bool waypoint_reached(double d_smoothed, const UgvControlParams& p, double eps) {
  return d_smoothed <= p.L + eps;
}

GroundStation::GroundStation(const CameraModel& cam, const UgvControlParams& ugv,
                             const StationParams& params, double frame_period)
    : cam_(cam),
      ugv_(ugv),
      params_(params),
      frame_period_(frame_period),
      d_(params.des_d, false),
      alpha_(params.des_alpha, true),
      x_(params.des_x, false),
      y_(params.des_y, false),
      z_(params.des_z, false) {}

void GroundStation::set_params(const StationParams& p) {
  params_ = p;
  d_.set_factors(p.des_d);
  alpha_.set_factors(p.des_alpha);
  x_.set_factors(p.des_x);
  y_.set_factors(p.des_y);
  z_.set_factors(p.des_z);
}

void GroundStation::emit(EventKind k, double t, std::string detail) {
  events_.push_back({k, t, waypoint_ ? waypoint_->id : -1, std::move(detail)});
}

std::vector<Event> GroundStation::drain_events() {
  std::vector<Event> out;
  out.swap(events_);
  return out;
}

double GroundStation::altitude() const {
  if (!last_) return std::numeric_limits<double>::quiet_NaN();
  if (params_.altitude_source == AltitudeSource::markers && !z_.empty()) return z_.value();
  return last_->uav_z;
}

double GroundStation::smoothing_period() const {
  return params_.smoothing_rate == SmoothingRate::camera ? frame_period_ : kCommandPeriod;
}

void GroundStation::on_measurement(const MeasurementMsg& msg, double now) {
  (void)now;
  if (!msg.obs.valid) return;  // dropout: downstream keeps the last estimate
  if (!msg.obs.in_frame || !(msg.uav_z > 0.0)) {
    if (tracking_) {
      tracking_ = false;
      emit(EventKind::frame_exit, msg.obs.t, "UGV left the camera frame");
    }
    return;
  }
  tracking_ = true;
  absorb(msg);
  if (params_.smoothing_rate == SmoothingRate::camera) push_smoothed();
}

void GroundStation::absorb(const MeasurementMsg& msg) {
  last_ = msg;
  if (params_.altitude_source == AltitudeSource::markers) {
    try {
      z_.push(estimate_altitude(msg.obs, ugv_.L, cam_));
    } catch (const EstimationError&) {
    }
  }
  update_pose(msg);
}

void GroundStation::update_pose(const MeasurementMsg& msg) {
  if (!waypoint_) return;
  // The waypoint is fixed in the world; re-image it from where the UAV is now.
  const GroundPoint rel{waypoint_->world_x - msg.uav_x, waypoint_->world_y - msg.uav_y};
  const PixelPoint wpx = project(rel, msg.uav_z, cam_);
  try {
    raw_pose_ = estimate_pose(msg.obs, wpx, altitude(), cam_);
    pose_time_ = msg.obs.t;
  } catch (const EstimationError&) {
  }
}

void GroundStation::push_smoothed() {
  if (!last_) return;
  x_.push(last_->obs.rc.x);
  y_.push(last_->obs.rc.y);
  if (!waypoint_ || !raw_pose_) return;
  d_.push(raw_pose_->d);
  alpha_.push(raw_pose_->alpha);
  if (!reached_ && waypoint_reached(d_.value(), ugv_, params_.arrival_epsilon)) {
    reached_ = true;
    emit(EventKind::waypoint_reached, last_->obs.t);
  }
}

WaypointMsg GroundStation::handle_click(const PixelPoint& pixel, double now) {
  if (!in_frame(pixel, cam_)) {
    emit(EventKind::click_rejected, now, "click outside the image frame");
    throw ClickRejected("click outside the image frame");
  }
  if (!last_) {
    emit(EventKind::click_rejected, now, "no aerial view yet");
    throw ClickRejected("no aerial view yet");
  }
  WaypointMsg w;
  w.id = next_id_++;
  w.pixel = pixel;
  w.ground = backproject(pixel, altitude(), cam_);
  w.world_x = last_->uav_x + w.ground.x;
  w.world_y = last_->uav_y + w.ground.y;
  w.t_set = now;

  waypoint_ = w;
  d_.reset();
  alpha_.reset();
  raw_pose_.reset();
  reached_ = false;
  stale_ = false;
  emit(EventKind::waypoint_set, now);

  if (tracking_) {
    update_pose(*last_);
    if (raw_pose_) {
      d_.push(raw_pose_->d);
      alpha_.push(raw_pose_->alpha);
      if (waypoint_reached(d_.value(), ugv_, params_.arrival_epsilon)) {
        reached_ = true;
        emit(EventKind::waypoint_reached, now);
      }
    }
  }
  return w;
}

bool GroundStation::pose_fresh(double now) const {
  return tracking_ && raw_pose_.has_value() && !d_.empty() &&
         now - pose_time_ <= params_.stale_timeout;
}

std::optional<CommandMsg> GroundStation::command_tick(double now) {
  if (params_.smoothing_rate == SmoothingRate::command && tracking_) push_smoothed();
  if (!waypoint_ || !tracking_) return std::nullopt;
  if (!pose_fresh(now)) {
    if (!stale_) {
      stale_ = true;
      emit(EventKind::stale_pose, now, "pose older than stale timeout");
    }
    return std::nullopt;
  }
  stale_ = false;
  return CommandMsg{now, std::max(0.0, d_.value()), wrap_angle(alpha_.value()), waypoint_->id};
}

std::optional<double> GroundStation::smoothed_d() const {
  if (!waypoint_ || d_.empty()) return std::nullopt;
  return d_.value();
}

std::optional<double> GroundStation::smoothed_alpha() const {
  if (!waypoint_ || alpha_.empty()) return std::nullopt;
  return alpha_.value();
}

SmoothedMarker GroundStation::servo_input() const {
  SmoothedMarker m;
  m.valid = tracking_ && !x_.empty();
  m.rc = {x_.value(), y_.value()};
  m.rc_trend = {x_.trend(), y_.trend()};
  return m;
}

}  // namespace agc

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "agc/camera.hpp"
#include "agc/netlink.hpp"
#include "agc/perception.hpp"
#include "agc/smoothing.hpp"
#include "agc/uav.hpp"
#include "agc/ugv.hpp"

namespace agc {

enum class EventKind { waypoint_set, waypoint_reached, frame_exit, stale_pose, click_rejected };

const char* to_string(EventKind k);

struct Event {
  EventKind kind = EventKind::waypoint_set;
  double t = 0.0;
  std::int64_t waypoint_id = -1;
  std::string detail;
};

class ClickRejected : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct WaypointMsg {
  std::int64_t id = -1;
  PixelPoint pixel;    // as clicked
  GroundPoint ground;  // camera frame at click time
  double world_x = 0.0;
  double world_y = 0.0;
  double t_set = 0.0;
};

enum class AltitudeSource { reported, markers };
enum class SmoothingRate { camera, command };

struct StationParams {
  double arrival_epsilon = 0.05;  // m
  double stale_timeout = 0.5;     // s
  AltitudeSource altitude_source = AltitudeSource::reported;
  SmoothingRate smoothing_rate = SmoothingRate::camera;
  DesFactors des_d;
  DesFactors des_alpha;
  DesFactors des_x;
  DesFactors des_y;
  DesFactors des_z;

  void validate() const;
};

/// True iff d <= L + eps.
bool waypoint_reached(double d_smoothed, const UgvControlParams& p, double eps);

/// Ground-station mission logic. Single writer: the engine step.
class GroundStation {
 public:
  static constexpr double kCommandPeriod = 0.02;  // s, 50 Hz

  GroundStation(const CameraModel& cam, const UgvControlParams& ugv, const StationParams& params,
                double frame_period);

  void on_measurement(const MeasurementMsg& msg, double now);

  /// Called every command period. Emits the smoothed (d, alpha) when a
  /// waypoint is active and the pose is fresh.
  std::optional<CommandMsg> command_tick(double now);

  /// Operator click in image pixels. Throws ClickRejected when the pixel is
  /// outside the frame or no aerial view has been received yet.
  WaypointMsg handle_click(const PixelPoint& pixel, double now);

  SmoothedMarker servo_input() const;
  /// Seconds between smoothing samples.
  double smoothing_period() const;
  /// Altitude used for backprojection; NaN before the first frame.
  double altitude() const;

  bool has_view() const { return last_.has_value(); }
  bool tracking() const { return tracking_; }
  bool reached() const { return reached_; }
  bool pose_fresh(double now) const;
  const std::optional<WaypointMsg>& active_waypoint() const { return waypoint_; }
  const std::optional<PoseEstimate>& raw_pose() const { return raw_pose_; }
  std::optional<double> smoothed_d() const;
  std::optional<double> smoothed_alpha() const;
  std::int64_t next_waypoint_id() const { return next_id_; }

  const StationParams& params() const { return params_; }
  void set_params(const StationParams& p);
  void set_ugv_params(const UgvControlParams& p) { ugv_ = p; }

  std::vector<Event> drain_events();

 private:
  void absorb(const MeasurementMsg& msg);
  void update_pose(const MeasurementMsg& msg);
  void push_smoothed();
  void emit(EventKind k, double t, std::string detail = {});

  CameraModel cam_;
  UgvControlParams ugv_;
  StationParams params_;
  double frame_period_;

  std::optional<MeasurementMsg> last_;  // latest usable measurement
  std::optional<WaypointMsg> waypoint_;
  std::int64_t next_id_ = 1;

  std::optional<PoseEstimate> raw_pose_;
  double pose_time_ = 0.0;

  DesChannel d_, alpha_, x_, y_, z_;
  bool tracking_ = false;
  bool reached_ = false;
  bool stale_ = false;
  std::vector<Event> events_;
};

}  // namespace agc

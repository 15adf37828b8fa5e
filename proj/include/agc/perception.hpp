#pragma once

#include <cstdint>
#include <random>

#include "agc/camera.hpp"
#include "agc/uav.hpp"
#include "agc/ugv.hpp"

namespace agc {

/// Red (axle center) and blue (head) marker pixels seen from the UAV.
struct MarkerObservation {
  double t = 0.0;
  PixelPoint rc;
  PixelPoint rh;
  bool in_frame = false;
  bool valid = false;  // false on dropout

  bool usable() const { return valid && in_frame; }
};

struct NoiseModel {
  double pixel_stddev = 0.0;  // px
  double dropout_prob = 0.0;  // [0, 1)
  std::uint64_t seed = 0;

  void validate() const;
};

struct ObserveOptions {
  double marker_gap = 0.15;  // m, axle to head marker
  // Rotate the line of sight by the UAV roll/pitch instead of assuming a
  // nadir camera.
  bool tilt_projection = false;
};

/// Noise-free marker pixels for the current ground truth; never drops out.
MarkerObservation project_markers(const UgvState& ugv, const UavState& uav, const CameraModel& cam,
                                  const ObserveOptions& opts, double t);

/// Synthetic color-tracker output for the current ground truth. Always draws
/// the same count of variates from `rng` so the stream stays aligned whether
/// or not noise is active.
MarkerObservation observe(const UgvState& ugv, const UavState& uav, const CameraModel& cam,
                          const NoiseModel& noise, const ObserveOptions& opts, double t,
                          std::mt19937_64& rng);

struct PoseEstimate {
  double d = 0.0;      // m
  double alpha = 0.0;  // rad, (-pi, pi]
  double theta = 0.0;  // bearing Rc -> waypoint
  double beta = 0.0;   // heading Rc -> Rh
};

/// Steering angle and metric distance to the waypoint from pixel data at
/// altitude z. Throws EstimationError when Rc and Rh coincide or the
/// observation is unusable.
PoseEstimate estimate_pose(const MarkerObservation& obs, const PixelPoint& waypoint, double z,
                           const CameraModel& cam);

double estimate_altitude(const MarkerObservation& obs, double marker_gap, const CameraModel& cam);

}  // namespace agc

#pragma once

#include <stdexcept>

namespace agc {

/// Raised when a measurement cannot yield an estimate (coincident markers,
/// lost track). Distinct from std::domain_error, which flags bad arguments.
class EstimationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Image-plane coordinates in pixels, signed, origin at the image center.
struct PixelPoint {
  double x = 0.0;
  double y = 0.0;
};

/// Ground-plane coordinates in meters, expressed in the camera (UAV) frame.
struct GroundPoint {
  double x = 0.0;
  double y = 0.0;
};

/// Down-facing pinhole camera. Gains are f / pixel pitch, in pixels.
/// Defaults give Gx = Gy = 500 px on a 640x480 sensor.
struct CameraModel {
  double focal_length = 0.004;    // m
  double pixel_pitch_x = 8.0e-6;  // m / px
  double pixel_pitch_y = 8.0e-6;  // m / px
  double principal_x = 0.0;       // px
  double principal_y = 0.0;       // px
  int image_width = 640;          // px
  int image_height = 480;         // px

  double gain_x() const { return focal_length / pixel_pitch_x; }
  double gain_y() const { return focal_length / pixel_pitch_y; }

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;

  /// Builds a camera with the given gains by fixing the pixel pitch.
  static CameraModel from_gains(double gx, double gy, int width = 640, int height = 480);
};

bool in_frame(const PixelPoint& p, const CameraModel& cam);

/// Ground point at altitude z (m) to pixels. Throws std::domain_error for z <= 0.
PixelPoint project(const GroundPoint& p, double z, const CameraModel& cam);

/// Pixels to ground point at altitude z (m); exact inverse of project().
GroundPoint backproject(const PixelPoint& p, double z, const CameraModel& cam);

/// Altitude from the pixel separation of two markers a known metric gap apart
/// on the ground. Anisotropic pixels weight the gap direction per axis gain.
/// Throws EstimationError when the markers coincide.
double estimate_altitude(const PixelPoint& rc, const PixelPoint& rh, double marker_gap,
                         const CameraModel& cam);

}  // namespace agc

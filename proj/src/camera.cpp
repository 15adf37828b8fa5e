#include "agc/camera.hpp"

#include <cmath>
#include <string>

namespace agc {

namespace {

void require_altitude(double z) {
  if (!(z > 0.0) || !std::isfinite(z)) {
    throw std::domain_error("altitude must be positive, got " + std::to_string(z));
  }
}

}  // namespace

void CameraModel::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument(std::string("camera.") + name + " must be positive");
    }
  };
  positive(focal_length, "focal_length");
  positive(pixel_pitch_x, "pixel_pitch_x");
  positive(pixel_pitch_y, "pixel_pitch_y");
  if (image_width <= 0) throw std::invalid_argument("camera.image_width must be positive");
  if (image_height <= 0) throw std::invalid_argument("camera.image_height must be positive");
  if (!std::isfinite(principal_x) || !std::isfinite(principal_y)) {
    throw std::invalid_argument("camera principal point must be finite");
  }
}

CameraModel CameraModel::from_gains(double gx, double gy, int width, int height) {
  CameraModel cam;
  cam.pixel_pitch_x = cam.focal_length / gx;
  cam.pixel_pitch_y = cam.focal_length / gy;
  cam.image_width = width;
  cam.image_height = height;
  return cam;
}

bool in_frame(const PixelPoint& p, const CameraModel& cam) {
  return std::isfinite(p.x) && std::isfinite(p.y) &&
         std::abs(p.x) <= 0.5 * cam.image_width && std::abs(p.y) <= 0.5 * cam.image_height;
}

PixelPoint project(const GroundPoint& p, double z, const CameraModel& cam) {
  require_altitude(z);
  return {cam.gain_x() * p.x / z + cam.principal_x, cam.gain_y() * p.y / z + cam.principal_y};
}

GroundPoint backproject(const PixelPoint& p, double z, const CameraModel& cam) {
  require_altitude(z);
  return {(p.x - cam.principal_x) * z / cam.gain_x(), (p.y - cam.principal_y) * z / cam.gain_y()};
}

double estimate_altitude(const PixelPoint& rc, const PixelPoint& rh, double marker_gap,
                         const CameraModel& cam) {
  if (!(marker_gap > 0.0)) throw std::domain_error("marker gap must be positive");
  // Metric length of the pixel gap at unit altitude; equals gap_px / G when Gx == Gy.
  const double mx = (rh.x - rc.x) / cam.gain_x();
  const double my = (rh.y - rc.y) / cam.gain_y();
  const double unit_len = std::hypot(mx, my);
  if (!(unit_len > 0.0)) throw EstimationError("markers coincide; altitude unobservable");
  return marker_gap / unit_len;
}

}  // namespace agc

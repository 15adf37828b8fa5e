#include "agc/perception.hpp"

#include <cmath>
#include <stdexcept>

#include "agc/angles.hpp"

namespace agc {

void NoiseModel::validate() const {
  if (!(pixel_stddev >= 0.0)) throw std::invalid_argument("noise.pixel_stddev must be non-negative");
  if (!(dropout_prob >= 0.0 && dropout_prob < 1.0)) {
    throw std::invalid_argument("noise.dropout_prob must lie in [0, 1)");
  }
}

namespace {

// Line of sight from the camera to a ground point, expressed in camera axes.
// Nadir camera: axes aligned with world x/y, depth equal to altitude.
struct Ray {
  double x, y, depth;
};

Ray line_of_sight(double gx, double gy, const UavState& uav, bool tilted) {
  const double dx = gx - uav.x;
  const double dy = gy - uav.y;
  const double dz = -uav.z;
  if (!tilted) return {dx, dy, uav.z};
  // Body = Rz(psi) Ry(theta) Rx(phi); world -> body is the transpose.
  const double cf = std::cos(uav.phi), sf = std::sin(uav.phi);
  const double ct = std::cos(uav.theta), st = std::sin(uav.theta);
  const double cp = std::cos(uav.psi), sp = std::sin(uav.psi);
  // R^T rows are the columns of R.
  const double bx = (cp * ct) * dx + (sp * ct) * dy + (-st) * dz;
  const double by = (cp * st * sf - sp * cf) * dx + (sp * st * sf + cp * cf) * dy + (ct * sf) * dz;
  const double bz = (cp * st * cf + sp * sf) * dx + (sp * st * cf - cp * sf) * dy + (ct * cf) * dz;
  return {bx, by, -bz};
}

PixelPoint image_of(const Ray& ray, const CameraModel& cam) {
  if (!(ray.depth > 0.0)) return {std::nan(""), std::nan("")};
  return project({ray.x, ray.y}, ray.depth, cam);
}

}  // namespace

MarkerObservation project_markers(const UgvState& ugv, const UavState& uav, const CameraModel& cam,
                                  const ObserveOptions& opts, double t) {
  if (!(uav.z > 0.0)) throw std::domain_error("observe: UAV altitude must be positive");
  const double hx = ugv.x + opts.marker_gap * std::cos(ugv.psi);
  const double hy = ugv.y + opts.marker_gap * std::sin(ugv.psi);
  MarkerObservation obs;
  obs.t = t;
  obs.rc = image_of(line_of_sight(ugv.x, ugv.y, uav, opts.tilt_projection), cam);
  obs.rh = image_of(line_of_sight(hx, hy, uav, opts.tilt_projection), cam);
  obs.in_frame = in_frame(obs.rc, cam) && in_frame(obs.rh, cam);
  obs.valid = true;
  return obs;
}

MarkerObservation observe(const UgvState& ugv, const UavState& uav, const CameraModel& cam,
                          const NoiseModel& noise, const ObserveOptions& opts, double t,
                          std::mt19937_64& rng) {
  MarkerObservation obs = project_markers(ugv, uav, cam, opts, t);

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double dropout_draw = unit(rng);
  double n[4];
  for (double& v : n) v = gauss(rng);

  const double s = noise.pixel_stddev;
  obs.rc.x += s * n[0];
  obs.rc.y += s * n[1];
  obs.rh.x += s * n[2];
  obs.rh.y += s * n[3];
  obs.in_frame = in_frame(obs.rc, cam) && in_frame(obs.rh, cam);
  obs.valid = dropout_draw >= noise.dropout_prob;
  return obs;
}

PoseEstimate estimate_pose(const MarkerObservation& obs, const PixelPoint& waypoint, double z,
                           const CameraModel& cam) {
  if (!obs.usable()) throw EstimationError("estimate_pose: observation is not usable");
  const double hx = obs.rh.x - obs.rc.x;
  const double hy = obs.rh.y - obs.rc.y;
  if (hx == 0.0 && hy == 0.0) throw EstimationError("estimate_pose: markers coincide");

  PoseEstimate p;
  p.theta = std::atan2(waypoint.y - obs.rc.y, waypoint.x - obs.rc.x);
  p.beta = std::atan2(hy, hx);
  p.alpha = wrap_angle(p.theta - p.beta);
  const GroundPoint w = backproject(waypoint, z, cam);
  const GroundPoint c = backproject(obs.rc, z, cam);
  p.d = std::hypot(w.x - c.x, w.y - c.y);
  return p;
}

double estimate_altitude(const MarkerObservation& obs, double marker_gap, const CameraModel& cam) {
  if (!obs.usable()) throw EstimationError("estimate_altitude: observation is not usable");
  return estimate_altitude(obs.rc, obs.rh, marker_gap, cam);
}

}  // namespace agc

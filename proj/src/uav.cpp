#include "agc/uav.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace agc {

void UavParams::validate() const {
  if (!(m > 0.0)) throw std::invalid_argument("uav.m must be positive");
  if (!(K1 > 0.0)) throw std::invalid_argument("uav.K1 must be positive");
  if (!(K2 > 0.0)) throw std::invalid_argument("uav.K2 must be positive");
  if (!(tau_att > 0.0)) throw std::invalid_argument("uav.tau_att must be positive");
  if (!(g > 0.0)) throw std::invalid_argument("uav.g must be positive");
  if (!(omega_z > 0.0)) throw std::invalid_argument("uav.omega_z must be positive");
  if (!(angle_max > 0.0 && angle_max < kPi / 2)) {
    throw std::invalid_argument("uav.angle_max must lie in (0, pi/2)");
  }
  if (!(z_min > 0.0)) throw std::invalid_argument("uav.z_min must be positive");
  if (!(z_min < z_d)) throw std::invalid_argument("uav.z_d must exceed uav.z_min");
  if (!(z_d < z_max)) throw std::invalid_argument("uav.z_d must be below uav.z_max");
}

ServoError servo_error(const SmoothedMarker& obs, double sample_period, double z,
                       const CameraModel& cam, const ServoError& previous, ServoUnits units) {
  if (!obs.valid) {
    ServoError held = previous;
    held.stale = true;
    return held;
  }
  if (!(sample_period > 0.0)) throw std::domain_error("servo_error: sample period must be positive");
  const PixelPoint err{obs.rc.x - cam.principal_x, obs.rc.y - cam.principal_y};
  ServoError e;
  e.stale = false;
  if (units == ServoUnits::pixel) {
    e.e_x = err.x;
    e.e_y = err.y;
    e.de_x = obs.rc_trend.x / sample_period;
    e.de_y = obs.rc_trend.y / sample_period;
    return e;
  }
  const GroundPoint g = backproject(obs.rc, z, cam);
  e.e_x = g.x;
  e.e_y = g.y;
  e.de_x = obs.rc_trend.x * z / cam.gain_x() / sample_period;
  e.de_y = obs.rc_trend.y * z / cam.gain_y() / sample_period;
  return e;
}

ThrustDirection servo_control(const ServoError& e, const UavParams& p, double U1) {
  if (!(U1 > 0.0)) throw std::domain_error("servo_control: thrust must be positive");
  const double k = p.m / U1;
  return {std::clamp(k * (p.K1 * e.e_x + p.K2 * e.de_x), -1.0, 1.0),
          std::clamp(k * (p.K1 * e.e_y + p.K2 * e.de_y), -1.0, 1.0)};
}

Attitude desired_angles(const ThrustDirection& u, double angle_max) {
  const double phi = std::asin(std::clamp(-u.u_yd, -1.0, 1.0));
  const double c = std::cos(phi);
  const double ratio = c > 0.0 ? std::clamp(u.u_xd / c, -1.0, 1.0) : std::copysign(1.0, u.u_xd);
  const double theta = std::asin(ratio);
  return {std::clamp(phi, -angle_max, angle_max), std::clamp(theta, -angle_max, angle_max)};
}

PlanarAccel translational_accel(double phi, double theta, double psi, double U1, double m) {
  if (!(m > 0.0)) throw std::domain_error("translational_accel: mass must be positive");
  const double cphi = std::cos(phi), sphi = std::sin(phi);
  const double sth = std::sin(theta);
  const double cpsi = std::cos(psi), spsi = std::sin(psi);
  return {(cphi * sth * cpsi + sphi * spsi) * U1 / m, (cphi * sth * spsi - sphi * cpsi) * U1 / m};
}

UavState inner_loop_step(const UavState& s, const Attitude& desired, const UavParams& p,
                         double dt) {
  if (!(dt > 0.0)) throw std::domain_error("inner_loop_step: dt must be positive");
  UavState n = s;
  const double k = 1.0 - std::exp(-dt / p.tau_att);
  n.phi += (desired.phi - s.phi) * k;
  n.theta += (desired.theta - s.theta) * k;
  n.psi = 0.0;

  const double tilt = std::cos(n.phi) * std::cos(n.theta);
  const double kp = p.omega_z * p.omega_z;
  const double kd = 2.0 * p.omega_z;
  const double vertical = p.g + kp * (p.z_d - s.z) - kd * s.vz;
  n.U1 = std::max(0.0, p.m * vertical / tilt);

  const PlanarAccel a = translational_accel(n.phi, n.theta, n.psi, n.U1, p.m);
  const double az = n.U1 * tilt / p.m - p.g;
  n.vx += a.ax * dt;
  n.vy += a.ay * dt;
  n.vz += az * dt;
  n.x += n.vx * dt;
  n.y += n.vy * dt;
  n.z += n.vz * dt;
  if (n.z <= 0.0) {
    n.z = 0.0;
    n.vz = std::max(0.0, n.vz);
    // Resting on the ground: no sliding.
    if (n.U1 * tilt <= p.m * p.g) {
      n.vx = 0.0;
      n.vy = 0.0;
      n.x = s.x;
      n.y = s.y;
    }
  }
  return n;
}

}  // namespace agc

#pragma once

#include "agc/angles.hpp"
#include "agc/camera.hpp"

namespace agc {

struct UavState {
  double x = 0.0, y = 0.0, z = 0.0;     // m, world
  double vx = 0.0, vy = 0.0, vz = 0.0;  // m/s
  double phi = 0.0;    // rad, roll
  double theta = 0.0;  // rad, pitch
  double psi = 0.0;    // rad, yaw (held at 0)
  double U1 = 0.0;     // N, total thrust
};

/// Whether the PD law acts on metric ground-plane errors or raw pixel errors.
enum class ServoUnits { metric, pixel };

struct UavParams {
  double m = 1.4;   // kg
  double K1 = 1.5;  // 1/s^2
  double K2 = 3.0;  // 1/s
  double tau_att = 0.15;  // s
  double z_d = 3.0;       // m
  double z_min = 1.5;     // m
  double z_max = 6.0;     // m
  double angle_max = deg2rad(20.0);
  double g = 9.81;        // m/s^2
  double omega_z = 2.0;   // rad/s, altitude loop natural frequency (critically damped)
  ServoUnits servo_units = ServoUnits::metric;

  // Airframe constants carried for completeness; the attitude inner loop is
  // first-order and does not use them.
  double b = 1.3e-5;    // N s^2
  double d = 1e-9;      // N m s^2
  double J_r = 6e-7;    // kg m^2
  double L_arm = 1.0;   // m
  double I_x = 0.02582;  // kg m^2
  double I_y = 0.02616;
  double I_z = 0.04543;

  void validate() const;
  double hover_thrust() const { return m * g; }
};

/// Red-marker pixel position and per-sample trend after smoothing.
struct SmoothedMarker {
  bool valid = false;
  PixelPoint rc;
  PixelPoint rc_trend;  // px per smoothing sample
};

struct ServoError {
  double e_x = 0.0, e_y = 0.0;    // m (or px in pixel mode)
  double de_x = 0.0, de_y = 0.0;  // per second
  bool stale = true;
};

/// Image-centering error of the red marker. Invalid input holds `previous`
/// and marks it stale.
ServoError servo_error(const SmoothedMarker& obs, double sample_period, double z,
                       const CameraModel& cam, const ServoError& previous,
                       ServoUnits units = ServoUnits::metric);

struct ThrustDirection {
  double u_xd = 0.0;
  double u_yd = 0.0;
};

/// PD visual-servo law, clamped to [-1, 1]. Throws std::domain_error for U1 <= 0.
ThrustDirection servo_control(const ServoError& e, const UavParams& p, double U1);

struct Attitude {
  double phi = 0.0;
  double theta = 0.0;
};

/// Roll/pitch that realize a thrust direction at zero yaw, limited to +-angle_max.
Attitude desired_angles(const ThrustDirection& u, double angle_max);

struct PlanarAccel {
  double ax = 0.0;
  double ay = 0.0;
};

PlanarAccel translational_accel(double phi, double theta, double psi, double U1, double m);

/// One autopilot step: first-order attitude tracking, altitude hold to z_d,
/// semi-implicit Euler on the translational states.
UavState inner_loop_step(const UavState& s, const Attitude& desired, const UavParams& p,
                         double dt);

}  // namespace agc

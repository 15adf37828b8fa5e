#pragma once

namespace agc {

/// Unicycle ground robot. (x, y) is the driving-axle center, psi the heading.
struct UgvState {
  double x = 0.0;    // m
  double y = 0.0;    // m
  double psi = 0.0;  // rad, (-pi, pi]
  double u = 0.0;    // m/s, longitudinal
  double r = 0.0;    // rad/s, yaw rate
};

struct UgvControlParams {
  double K = 0.1;      // 1/s
  double L = 0.15;     // m, axle to head marker
  double u_max = 0.5;  // m/s
  double r_max = 1.0;  // rad/s
  double tau_act = 0.0;          // s, actuator lag; 0 is ideal
  double command_timeout = 0.5;  // s, halt when commands stop arriving

  void validate() const;
};

struct UgvCommand {
  double u = 0.0;
  double r = 0.0;
};

/// Waypoint controller: u = K (d cos a - L), r = K d sin a / L, then saturated.
UgvCommand ugv_control(double d, double alpha, const UgvControlParams& p);

/// Integrates the unicycle one step. Throws std::domain_error for dt <= 0.
UgvState ugv_step(const UgvState& s, const UgvCommand& cmd, double dt, double tau_act = 0.0);

}  // namespace agc

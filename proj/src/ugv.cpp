#include "agc/ugv.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "agc/angles.hpp"

namespace agc {

void UgvControlParams::validate() const {
  if (!(K > 0.0)) throw std::invalid_argument("ugv.K must be positive");
  if (!(L > 0.0)) throw std::invalid_argument("ugv.L must be positive");
  if (!(u_max > 0.0)) throw std::invalid_argument("ugv.u_max must be positive");
  if (!(r_max > 0.0)) throw std::invalid_argument("ugv.r_max must be positive");
  if (!(tau_act >= 0.0)) throw std::invalid_argument("ugv.tau_act must be non-negative");
  if (!(command_timeout > 0.0)) throw std::invalid_argument("ugv.command_timeout must be positive");
}

UgvCommand ugv_control(double d, double alpha, const UgvControlParams& p) {
  if (d < 0.0) d = 0.0;
  const double u = p.K * (d * std::cos(alpha) - p.L);
  const double r = p.K * d * std::sin(alpha) / p.L;
  return {std::clamp(u, -p.u_max, p.u_max), std::clamp(r, -p.r_max, p.r_max)};
}

UgvState ugv_step(const UgvState& s, const UgvCommand& cmd, double dt, double tau_act) {
  if (!(dt > 0.0)) throw std::domain_error("ugv_step: dt must be positive");
  UgvState n = s;
  if (tau_act > 0.0) {
    const double k = 1.0 - std::exp(-dt / tau_act);
    n.u += (cmd.u - s.u) * k;
    n.r += (cmd.r - s.r) * k;
  } else {
    n.u = cmd.u;
    n.r = cmd.r;
  }
  n.x += n.u * std::cos(s.psi) * dt;
  n.y += n.u * std::sin(s.psi) * dt;
  n.psi = wrap_angle(s.psi + n.r * dt);
  return n;
}

}  // namespace agc

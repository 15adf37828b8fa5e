#include "agc/smoothing.hpp"

#include <stdexcept>
#include <string>

#include "agc/angles.hpp"

namespace agc {

void DesFactors::validate(const char* channel) const {
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw std::invalid_argument(std::string("smoothing.gamma_") + channel + " must lie in [0, 1]");
  }
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw std::invalid_argument(std::string("smoothing.lambda_") + channel + " must lie in [0, 1]");
  }
}

DesState des_init(double m1, double m2, double gamma, double lambda) {
  return {m1, m2 - m1, 1, gamma, lambda};
}

DesState des_update(const DesState& s, double m) {
  // gamma*m + (1-gamma)*forecast, arranged so a constant input is an exact
  // fixed point in floating point.
  DesState n = s;
  const double forecast = s.level + s.trend;
  n.level = forecast + s.gamma * (m - forecast);
  n.trend = s.lambda * (n.level - s.level) + (1.0 - s.lambda) * s.trend;
  ++n.samples;
  return n;
}

DesState des_init_angle(double m1, double m2, double gamma, double lambda) {
  return {wrap_angle(m1), wrap_angle(m2 - m1), 1, gamma, lambda};
}

DesState des_update_angle(const DesState& s, double m) {
  // Same recurrences written around the one-step forecast so the innovation
  // can be wrapped before it is weighted.
  DesState n = s;
  const double forecast = s.level + s.trend;
  const double innovation = wrap_angle(m - forecast);
  n.level = wrap_angle(forecast + s.gamma * innovation);
  n.trend = s.lambda * wrap_angle(n.level - s.level) + (1.0 - s.lambda) * s.trend;
  ++n.samples;
  return n;
}

double DesChannel::push(double m) {
  if (!first_) {
    first_ = angular_ ? wrap_angle(m) : m;
    return *first_;
  }
  if (!state_) {
    state_ = angular_ ? des_init_angle(*first_, m, factors_.gamma, factors_.lambda)
                      : des_init(*first_, m, factors_.gamma, factors_.lambda);
  }
  state_ = angular_ ? des_update_angle(*state_, m) : des_update(*state_, m);
  return state_->level;
}

void DesChannel::reset() {
  first_.reset();
  state_.reset();
}

double DesChannel::value() const {
  if (state_) return state_->level;
  if (first_) return *first_;
  return 0.0;
}

std::int64_t DesChannel::samples() const {
  if (state_) return state_->samples;
  return first_ ? 1 : 0;
}

void DesChannel::set_factors(DesFactors f) {
  factors_ = f;
  if (state_) {
    state_->gamma = f.gamma;
    state_->lambda = f.lambda;
  }
}

}  // namespace agc

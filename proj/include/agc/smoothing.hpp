#pragma once

#include <cstdint>
#include <optional>

namespace agc {

/// Double exponential smoothing state for one scalar channel.
///   S_n = gamma * m_n + (1 - gamma) * (S_{n-1} + b_{n-1})
///   b_n = lambda * (S_n - S_{n-1}) + (1 - lambda) * b_{n-1}
struct DesState {
  double level = 0.0;  // S
  double trend = 0.0;  // b, per sample
  std::int64_t samples = 0;
  double gamma = 0.6;
  double lambda = 0.3;
};

struct DesFactors {
  double gamma = 0.6;
  double lambda = 0.3;

  void validate(const char* channel) const;
};

/// S_1 = m1, b_1 = m2 - m1. The caller feeds m2 to des_update() next.
DesState des_init(double m1, double m2, double gamma, double lambda);
DesState des_update(const DesState& s, double m);

/// Angular variants: differences are wrapped into (-pi, pi] and the level
/// stays in (-pi, pi].
DesState des_init_angle(double m1, double m2, double gamma, double lambda);
DesState des_update_angle(const DesState& s, double m);

/// Streaming wrapper that applies the two-sample initialization. Before the
/// second sample arrives the output is the first sample with zero trend.
class DesChannel {
 public:
  DesChannel() = default;
  DesChannel(DesFactors factors, bool angular) : factors_(factors), angular_(angular) {}

  double push(double m);
  void reset();

  bool empty() const { return !first_; }
  double value() const;
  double trend() const { return state_ ? state_->trend : 0.0; }
  std::int64_t samples() const;
  const DesFactors& factors() const { return factors_; }
  void set_factors(DesFactors f);

 private:
  DesFactors factors_;
  bool angular_ = false;
  std::optional<double> first_;
  std::optional<DesState> state_;
};

}  // namespace agc

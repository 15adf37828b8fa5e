#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "agc/angles.hpp"
#include "agc/ugv.hpp"

using namespace agc;

TEST(UgvControl, Examples) {
  UgvControlParams p;
  auto c = ugv_control(0.15, 0.0, p);
  EXPECT_NEAR(c.u, 0.0, 1e-15);
  EXPECT_NEAR(c.r, 0.0, 1e-15);
  c = ugv_control(1.15, 0.0, p);
  EXPECT_NEAR(c.u, 0.1, 1e-15);
  EXPECT_NEAR(c.r, 0.0, 1e-15);
  c = ugv_control(0.3, kPi / 2, p);
  EXPECT_NEAR(c.u, -0.015, 1e-15);
  EXPECT_NEAR(c.r, 0.2, 1e-15);
}

TEST(UgvControl, SaturationKeepsSign) {
  UgvControlParams p;
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> d(0.0, 50.0), a(-kPi, kPi);
  for (int i = 0; i < 2000; ++i) {
    const double dd = d(rng), aa = a(rng);
    const double u_raw = p.K * (dd * std::cos(aa) - p.L);
    const double r_raw = p.K * dd * std::sin(aa) / p.L;
    const auto c = ugv_control(dd, aa, p);
    EXPECT_LE(std::abs(c.u), p.u_max);
    EXPECT_LE(std::abs(c.r), p.r_max);
    EXPECT_EQ(std::signbit(c.u), std::signbit(u_raw));
    EXPECT_EQ(std::signbit(c.r), std::signbit(r_raw));
  }
}

TEST(UgvStep, Examples) {
  UgvState s;
  s = ugv_step(s, {1.0, 0.0}, 0.01);
  EXPECT_DOUBLE_EQ(s.x, 0.01);
  EXPECT_DOUBLE_EQ(s.y, 0.0);
  EXPECT_DOUBLE_EQ(s.psi, 0.0);

  UgvState w;
  w.psi = 0.5;
  w = ugv_step(w, {0.0, kPi}, 1.0);
  EXPECT_NEAR(w.psi, 0.5 - kPi, 1e-12);
  EXPECT_THROW(ugv_step(w, {0.0, 0.0}, 0.0), std::domain_error);
}

TEST(UgvStep, ActuatorLagIsFirstOrder) {
  UgvState s;
  const double tau = 0.2, dt = 0.001;
  for (int i = 0; i < 200; ++i) s = ugv_step(s, {0.4, 0.0}, dt, tau);
  EXPECT_NEAR(s.u, 0.4 * (1.0 - std::exp(-0.2 / tau)), 1e-9);
}

namespace {

struct Polar {
  double d, alpha;
};

Polar pose_to(const UgvState& s, double wx, double wy) {
  return {std::hypot(wx - s.x, wy - s.y), wrap_angle(std::atan2(wy - s.y, wx - s.x) - s.psi)};
}

}  // namespace

TEST(UgvClosedLoop, StraightAheadDecaysExponentially) {
  UgvControlParams p;
  UgvState s;
  const double wx = 1.15, dt = 0.001;
  const double e0 = 1.0;
  for (int k = 1; k <= 20000; ++k) {
    const Polar q = pose_to(s, wx, 0.0);
    s = ugv_step(s, ugv_control(q.d, q.alpha, p), dt);
    if (k == 5000 || k == 10000 || k == 20000) {
      const double t = k * dt;
      const double expect = e0 * std::exp(-p.K * t);
      EXPECT_NEAR(pose_to(s, wx, 0.0).d - p.L, expect, 0.02 * expect) << "t=" << t;
    }
  }
}

TEST(UgvClosedLoop, ConvergesFromRandomPoses) {
  UgvControlParams p;
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> pos(-3.0, 3.0), ang(-kPi, kPi);
  const double dt = 0.01;
  const int steps = static_cast<int>(10.0 / p.K / dt);
  for (int trial = 0; trial < 100; ++trial) {
    UgvState s{pos(rng), pos(rng), ang(rng)};
    const double wx = pos(rng), wy = pos(rng);
    if (std::hypot(wx - s.x, wy - s.y) < 0.05) continue;
    for (int k = 0; k < steps; ++k) {
      const Polar q = pose_to(s, wx, wy);
      s = ugv_step(s, ugv_control(q.d, q.alpha, p), dt);
    }
    const Polar q = pose_to(s, wx, wy);
    EXPECT_NEAR(q.d, p.L, 0.01) << "trial " << trial;
    EXPECT_LT(std::abs(rad2deg(q.alpha)), 1.0) << "trial " << trial;
  }
}

TEST(UgvParams, Validation) {
  UgvControlParams p;
  EXPECT_NO_THROW(p.validate());
  p.K = 0.0;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = {};
  p.L = -1.0;
  EXPECT_THROW(p.validate(), std::invalid_argument);
}

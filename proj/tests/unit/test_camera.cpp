#include <gtest/gtest.h>

#include <random>

#include "agc/camera.hpp"

using namespace agc;

namespace {
CameraModel cam500() { return CameraModel::from_gains(500.0, 500.0); }
}  // namespace

TEST(Camera, DefaultGainsAre500) {
  CameraModel cam;
  EXPECT_DOUBLE_EQ(cam.gain_x(), 500.0);
  EXPECT_DOUBLE_EQ(cam.gain_y(), 500.0);
  EXPECT_EQ(cam.image_width, 640);
  EXPECT_EQ(cam.image_height, 480);
}

TEST(Camera, ProjectExamples) {
  const auto cam = cam500();
  auto p = project({0.0, 0.0}, 3.0, cam);
  EXPECT_DOUBLE_EQ(p.x, 0.0);
  EXPECT_DOUBLE_EQ(p.y, 0.0);
  p = project({1.0, 0.0}, 2.0, cam);
  EXPECT_DOUBLE_EQ(p.x, 250.0);
  EXPECT_DOUBLE_EQ(p.y, 0.0);
  p = project({-0.6, 0.9}, 3.0, cam);
  EXPECT_NEAR(p.x, -100.0, 1e-12);
  EXPECT_NEAR(p.y, 150.0, 1e-12);
}

TEST(Camera, BackprojectExamples) {
  const auto cam = cam500();
  auto g = backproject({0.0, 0.0}, 3.0, cam);
  EXPECT_DOUBLE_EQ(g.x, 0.0);
  EXPECT_DOUBLE_EQ(g.y, 0.0);
  g = backproject({250.0, 0.0}, 2.0, cam);
  EXPECT_DOUBLE_EQ(g.x, 1.0);
  EXPECT_DOUBLE_EQ(g.y, 0.0);
}

TEST(Camera, NonPositiveAltitudeRejected) {
  const auto cam = cam500();
  EXPECT_THROW(project({1.0, 1.0}, 0.0, cam), std::domain_error);
  EXPECT_THROW(backproject({1.0, 1.0}, -1.0, cam), std::domain_error);
}

TEST(Camera, RoundTripRandomPoints) {
  CameraModel cam = CameraModel::from_gains(437.0, 512.0);
  cam.principal_x = 3.5;
  cam.principal_y = -7.25;
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> xy(-5.0, 5.0), zz(0.2, 10.0);
  for (int i = 0; i < 1000; ++i) {
    const GroundPoint p{xy(rng), xy(rng)};
    const double z = zz(rng);
    const GroundPoint q = backproject(project(p, z, cam), z, cam);
    EXPECT_NEAR(q.x, p.x, 1e-9);
    EXPECT_NEAR(q.y, p.y, 1e-9);
  }
}

TEST(Camera, ProjectionIsLinearAtFixedAltitude) {
  const auto cam = CameraModel::from_gains(320.0, 410.0);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 200; ++i) {
    const GroundPoint p{u(rng), u(rng)};
    const double a = u(rng);
    const double z = 1.0 + std::abs(u(rng));
    const auto lhs = project({a * p.x, a * p.y}, z, cam);
    const auto rhs = project(p, z, cam);
    EXPECT_NEAR(lhs.x, a * rhs.x, 1e-9);
    EXPECT_NEAR(lhs.y, a * rhs.y, 1e-9);
  }
}

TEST(Camera, AltitudeFromMarkerGap) {
  const auto cam = cam500();
  EXPECT_NEAR(estimate_altitude({0.0, 0.0}, {25.0, 0.0}, 0.15, cam), 3.0, 1e-12);
  EXPECT_NEAR(estimate_altitude({10.0, 10.0}, {10.0, 60.0}, 0.15, cam), 1.5, 1e-12);
  EXPECT_THROW(estimate_altitude({4.0, 4.0}, {4.0, 4.0}, 0.15, cam), EstimationError);
}

TEST(Camera, AltitudeRecoversProjectedGap) {
  const auto cam = cam500();
  for (double z : {1.5, 2.0, 3.0, 4.7}) {
    for (double heading : {0.0, 0.7, 2.0, -2.9}) {
      const auto rc = project({0.3, -0.2}, z, cam);
      const auto rh = project({0.3 + 0.15 * std::cos(heading), -0.2 + 0.15 * std::sin(heading)}, z, cam);
      EXPECT_NEAR(estimate_altitude(rc, rh, 0.15, cam), z, 1e-12);
    }
  }
}

TEST(Camera, InFrameBounds) {
  const auto cam = cam500();
  EXPECT_TRUE(in_frame({0.0, 0.0}, cam));
  EXPECT_TRUE(in_frame({320.0, -240.0}, cam));
  EXPECT_FALSE(in_frame({320.5, 0.0}, cam));
  EXPECT_FALSE(in_frame({0.0, 241.0}, cam));
  EXPECT_FALSE(in_frame({std::nan(""), 0.0}, cam));
}

TEST(Camera, ValidateRejectsBadOptics) {
  CameraModel cam;
  cam.focal_length = 0.0;
  EXPECT_THROW(cam.validate(), std::invalid_argument);
  cam = CameraModel{};
  cam.image_width = 0;
  EXPECT_THROW(cam.validate(), std::invalid_argument);
  EXPECT_NO_THROW(CameraModel{}.validate());
}

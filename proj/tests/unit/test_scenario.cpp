#include <gtest/gtest.h>

#include <fstream>

#include "agc/angles.hpp"
#include "agc/scenario.hpp"

using namespace agc;

TEST(Scenario, EmptyConfigGivesDefaults) {
  const Scenario s = load_scenario("");
  EXPECT_DOUBLE_EQ(s.ugv.K, 0.1);
  EXPECT_DOUBLE_EQ(s.ugv.L, 0.15);
  EXPECT_DOUBLE_EQ(s.uav.m, 1.4);
  EXPECT_DOUBLE_EQ(s.uav.b, 1.3e-5);
  EXPECT_DOUBLE_EQ(s.uav.d, 1e-9);
  EXPECT_DOUBLE_EQ(s.uav.J_r, 6e-7);
  EXPECT_DOUBLE_EQ(s.uav.L_arm, 1.0);
  EXPECT_DOUBLE_EQ(s.uav.I_x, 0.02582);
  EXPECT_DOUBLE_EQ(s.uav.I_y, 0.02616);
  EXPECT_DOUBLE_EQ(s.uav.I_z, 0.04543);
  EXPECT_DOUBLE_EQ(s.uav.K1, 1.5);
  EXPECT_DOUBLE_EQ(s.uav.K2, 3.0);
  EXPECT_DOUBLE_EQ(s.uav.z_d, 3.0);
  EXPECT_DOUBLE_EQ(s.camera.gain_x(), 500.0);
  EXPECT_DOUBLE_EQ(s.dt, 0.001);
  EXPECT_DOUBLE_EQ(s.command_link.rate_hz, 50.0);
  EXPECT_DOUBLE_EQ(s.ugv_initial.x, -8.0);
  EXPECT_DOUBLE_EQ(s.uav_initial.y, -9.0);
  EXPECT_TRUE(s.clicks.empty());
}

TEST(Scenario, DtMustDivideCommandPeriod) {
  try {
    load_scenario("[sim]\ndt = 0.007\n");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "sim.dt");
  }
  EXPECT_NO_THROW(load_scenario("[sim]\ndt = 0.004\n"));
  EXPECT_NO_THROW(load_scenario("[sim]\ndt = 0.002\n"));
}

TEST(Scenario, NegativeMassRejected) {
  try {
    load_scenario("[uav]\nm = -1.4\n");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "uav.m");
  }
}

TEST(Scenario, UnknownKeysAndSectionsRejected) {
  EXPECT_THROW(load_scenario("[uav]\nmass = 2\n"), ConfigError);
  EXPECT_THROW(load_scenario("[rover]\nK = 2\n"), ConfigError);
  EXPECT_THROW(load_scenario("K = 2\n"), ConfigError);
  EXPECT_THROW(load_scenario("[uav]\nm = heavy\n"), ConfigError);
}

TEST(Scenario, SyntaxErrorReportsLine) {
  try {
    load_scenario("[sim]\nseed = 3\n[broken\n");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(Scenario, CommandRateIsFixed) {
  EXPECT_THROW(load_scenario("[command_link]\nrate_hz = 25\n"), ConfigError);
}

TEST(Scenario, FramePeriodMustBeWholeSteps) {
  EXPECT_THROW(load_scenario("[video_link]\nrate_hz = 30\n"), ConfigError);
  EXPECT_NO_THROW(load_scenario("[video_link]\nrate_hz = 20\n"));
}

TEST(Scenario, ClickScript) {
  const Scenario s = load_scenario("[clicks]\nscript = 5 166.667 0; 65 0 -20.5\n");
  ASSERT_EQ(s.clicks.size(), 2u);
  EXPECT_DOUBLE_EQ(s.clicks[1].t, 65.0);
  EXPECT_DOUBLE_EQ(s.clicks[1].pixel.y, -20.5);
  EXPECT_THROW(load_scenario("[clicks]\nscript = 5 1\n"), ConfigError);
}

TEST(Scenario, RoundTripThroughText) {
  Scenario s;
  s.duration = 12.5;
  s.seed = 77;
  s.uav.servo_units = ServoUnits::pixel;
  s.station.altitude_source = AltitudeSource::markers;
  s.station.smoothing_rate = SmoothingRate::command;
  s.station.des_alpha.gamma = 0.45;
  s.noise.pixel_stddev = 1.25;
  s.camera.pixel_pitch_x = 2e-5;
  s.camera.pixel_pitch_y = 2e-5;
  s.tilt_projection = true;
  s.video_link.loss_prob = 0.05;
  s.clicks = {{1.0, {10.0, -20.0}}, {3.5, {0.1, 0.2}}};
  const std::string text = to_config_text(s);
  const Scenario t = load_scenario(text);
  EXPECT_EQ(to_config_text(t), text);
  EXPECT_EQ(t.seed, 77u);
  EXPECT_EQ(t.uav.servo_units, ServoUnits::pixel);
  EXPECT_TRUE(t.tilt_projection);
  EXPECT_DOUBLE_EQ(t.station.des_alpha.gamma, 0.45);
}

TEST(Scenario, StepArithmetic) {
  Scenario s;
  s.duration = 1.0;
  EXPECT_EQ(s.total_steps(), 1000);
  EXPECT_EQ(s.steps_per_command(), 20);
  EXPECT_EQ(s.steps_per_frame(), 40);
  s.dt = 0.004;
  EXPECT_EQ(s.total_steps(), 250);
  EXPECT_EQ(s.steps_per_command(), 5);
}

TEST(Scenario, ApplySetting) {
  Scenario s;
  apply_setting(s, "ugv.K", "0.2");
  EXPECT_DOUBLE_EQ(s.ugv.K, 0.2);
  EXPECT_THROW(apply_setting(s, "ugv.speed", "1"), ConfigError);
  EXPECT_THROW(apply_setting(s, "ugv.K", "fast"), ConfigError);
}

TEST(Scenario, MissingFileNamesPath) {
  try {
    load_scenario_file("/nonexistent/dir/scn.ini");
    FAIL();
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find("/nonexistent/dir/scn.ini"), std::string::npos);
  }
}

TEST(Scenario, ShippedScenariosLoad) {
  for (const char* name : {"defaults.ini", "fig9_inspection.ini", "rectangle.ini"}) {
    const std::string path = std::string(AGC_SOURCE_DIR) + "/scenarios/" + name;
    EXPECT_NO_THROW(load_scenario_file(path)) << path;
  }
  const Scenario d = load_scenario_file(std::string(AGC_SOURCE_DIR) + "/scenarios/defaults.ini");
  EXPECT_EQ(to_config_text(d), to_config_text(Scenario{}));
}

#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "agc/camera.hpp"
#include "agc/netlink.hpp"
#include "agc/perception.hpp"
#include "agc/station.hpp"
#include "agc/uav.hpp"
#include "agc/ugv.hpp"

namespace agc {

/// Scenario problem. `field` is "section.key" when known, `line` is 1-based
/// when the problem is syntactic (0 otherwise).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, std::size_t line, const std::string& what)
      : std::runtime_error(what), field_(std::move(field)), line_(line) {}
  const std::string& field() const { return field_; }
  std::size_t line() const { return line_; }

 private:
  std::string field_;
  std::size_t line_;
};

struct ScriptedClick {
  double t = 0.0;
  PixelPoint pixel;
};

struct Scenario {
  double duration = 60.0;  // s
  double dt = 0.001;       // s
  std::uint64_t seed = 1;
  // Hand payloads straight to the receiver instead of through the channels.
  bool bypass_links = false;

  CameraModel camera;
  bool tilt_projection = false;

  UgvState ugv_initial{-8.0, -8.0, 0.0, 0.0, 0.0};
  UgvControlParams ugv;

  UavState uav_initial{-6.0, -9.0, 0.0};
  UavParams uav;

  NoiseModel noise;
  ChannelParams video_link{0.08, 0.01, 0.0, 25.0, 0};
  ChannelParams command_link{0.01, 0.002, 0.0, 50.0, 0};
  StationParams station;

  std::vector<ScriptedClick> clicks;

  /// Throws ConfigError naming the offending field.
  void validate() const;

  std::int64_t total_steps() const;
  std::int64_t steps_per_command() const;
  std::int64_t steps_per_frame() const;
  double frame_period() const { return 1.0 / video_link.rate_hz; }
};

Scenario load_scenario(std::string_view text);
Scenario load_scenario_file(const std::filesystem::path& path);

/// Sets one "section.key" on `s` without validating the whole scenario.
/// Throws ConfigError for unknown names or malformed values.
void apply_setting(Scenario& s, std::string_view name, std::string_view value);

/// INI text that loads back to `s`.
std::string to_config_text(const Scenario& s);

}  // namespace agc

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "agc/uav.hpp"
#include "agc/ugv.hpp"

namespace agc {

/// One engine step of observable state. Station quantities that do not exist
/// yet (no waypoint, no pose) are NaN and the waypoint id is -1.
struct TelemetryFrame {
  double t = 0.0;
  UgvState ugv;
  UavState uav;
  double phi_d = 0.0;
  double theta_d = 0.0;

  std::int64_t waypoint_id = -1;
  double waypoint_x = 0.0;  // world, m
  double waypoint_y = 0.0;

  double raw_d = 0.0;
  double raw_alpha = 0.0;
  double smooth_d = 0.0;
  double smooth_alpha = 0.0;
  double px_err_x = 0.0;  // smoothed red-marker pixels
  double px_err_y = 0.0;
  double servo_ex = 0.0;  // ground-plane centering error used by the UAV
  double servo_ey = 0.0;

  double true_d = 0.0;      // axle to waypoint, ground truth
  double true_alpha = 0.0;  // ground truth
  double head_d = 0.0;      // head marker to waypoint, ground truth

  bool in_frame = false;  // both markers inside the image this step
  bool tracking = false;  // camera active (UAV above z_min)
  bool command_sent = false;
  bool waypoint_reached = false;
};

/// Fixed CSV column order.
const std::vector<std::string>& telemetry_columns();
std::string telemetry_header();
void append_csv_row(std::string& out, const TelemetryFrame& f);
std::string to_csv(const std::vector<TelemetryFrame>& frames);
void write_csv(std::ostream& os, const std::vector<TelemetryFrame>& frames);

/// Parses CSV produced by to_csv(). Throws std::runtime_error on a header
/// mismatch or malformed row.
std::vector<TelemetryFrame> read_csv(std::istream& is);

struct SegmentSummary {
  std::int64_t waypoint_id = -1;
  double t_start = 0.0;
  double t_end = 0.0;
  double peak_d = 0.0;          // smoothed
  double final_d = 0.0;         // smoothed
  double final_alpha = 0.0;     // smoothed, rad
  double final_true_d = 0.0;
  double final_true_alpha = 0.0;
  double convergence_time = -1.0;  // click to first reached flag; -1 if never
  // Means over the last kSteadyWindow seconds of the segment.
  double steady_d = 0.0;
  double steady_alpha = 0.0;
  double steady_true_d = 0.0;
  double steady_true_alpha = 0.0;
};

inline constexpr double kSteadyWindow = 5.0;  // s

struct RunSummary {
  std::size_t frames = 0;
  double duration = 0.0;
  double max_pixel_error = 0.0;  // over tracking frames
  double tracked_fraction = 0.0;  // in-frame share of tracking frames
  std::vector<SegmentSummary> segments;
};

/// Derived from telemetry alone so it can be recomputed from a CSV file.
RunSummary summarize(const std::vector<TelemetryFrame>& frames);
std::string summary_json(const RunSummary& s);

}  // namespace agc

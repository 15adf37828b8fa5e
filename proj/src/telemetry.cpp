#include "agc/telemetry.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <istream>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "agc/angles.hpp"
#include "agc/format.hpp"
#include "json.hpp"

namespace agc {

namespace {

struct Column {
  std::string name;
  std::function<double(const TelemetryFrame&)> get;
  std::function<void(TelemetryFrame&, double)> set;
  bool integral = false;
};

#define NUM(name, expr)                                               \
  Column{name, [](const TelemetryFrame& f) { return f.expr; },        \
         [](TelemetryFrame& f, double v) { f.expr = v; }, false}
#define FLAG(name, expr)                                                         \
  Column{name, [](const TelemetryFrame& f) { return f.expr ? 1.0 : 0.0; },       \
         [](TelemetryFrame& f, double v) { f.expr = v != 0.0; }, true}

const std::vector<Column>& columns() {
  static const std::vector<Column> cols = {
      NUM("t", t),
      NUM("ugv_x", ugv.x),
      NUM("ugv_y", ugv.y),
      NUM("ugv_psi", ugv.psi),
      NUM("ugv_u", ugv.u),
      NUM("ugv_r", ugv.r),
      NUM("uav_x", uav.x),
      NUM("uav_y", uav.y),
      NUM("uav_z", uav.z),
      NUM("uav_vx", uav.vx),
      NUM("uav_vy", uav.vy),
      NUM("uav_vz", uav.vz),
      NUM("uav_phi", uav.phi),
      NUM("uav_theta", uav.theta),
      NUM("uav_U1", uav.U1),
      NUM("phi_d", phi_d),
      NUM("theta_d", theta_d),
      Column{"waypoint_id",
             [](const TelemetryFrame& f) { return static_cast<double>(f.waypoint_id); },
             [](TelemetryFrame& f, double v) { f.waypoint_id = static_cast<std::int64_t>(v); },
             true},
      NUM("waypoint_x", waypoint_x),
      NUM("waypoint_y", waypoint_y),
      NUM("raw_d", raw_d),
      NUM("raw_alpha", raw_alpha),
      NUM("smooth_d", smooth_d),
      NUM("smooth_alpha", smooth_alpha),
      NUM("px_err_x", px_err_x),
      NUM("px_err_y", px_err_y),
      NUM("servo_ex", servo_ex),
      NUM("servo_ey", servo_ey),
      NUM("true_d", true_d),
      NUM("true_alpha", true_alpha),
      NUM("head_d", head_d),
      FLAG("in_frame", in_frame),
      FLAG("tracking", tracking),
      FLAG("command_sent", command_sent),
      FLAG("waypoint_reached", waypoint_reached),
  };
  return cols;
}

#undef NUM
#undef FLAG

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(',', start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

const std::vector<std::string>& telemetry_columns() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& c : columns()) n.push_back(c.name);
    return n;
  }();
  return names;
}

std::string telemetry_header() {
  std::string h;
  for (const auto& c : columns()) {
    if (!h.empty()) h += ',';
    h += c.name;
  }
  return h;
}

void append_csv_row(std::string& out, const TelemetryFrame& f) {
  bool first = true;
  for (const auto& c : columns()) {
    if (!first) out += ',';
    first = false;
    const double v = c.get(f);
    if (c.integral) out += std::to_string(static_cast<std::int64_t>(v));
    else append_double(out, v);
  }
  out += '\n';
}

std::string to_csv(const std::vector<TelemetryFrame>& frames) {
  std::string out = telemetry_header() + "\n";
  out.reserve(frames.size() * 400);
  for (const auto& f : frames) append_csv_row(out, f);
  return out;
}

void write_csv(std::ostream& os, const std::vector<TelemetryFrame>& frames) {
  os << to_csv(frames);
}

std::vector<TelemetryFrame> read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != telemetry_header()) {
    throw std::runtime_error("telemetry CSV: unexpected header");
  }
  const auto& cols = columns();
  std::vector<TelemetryFrame> frames;
  std::size_t line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != cols.size()) {
      throw std::runtime_error("telemetry CSV line " + std::to_string(line_no) + ": wrong column count");
    }
    TelemetryFrame f;
    for (std::size_t i = 0; i < cols.size(); ++i) {
      double v = 0.0;
      if (!parse_double(cells[i], v)) {
        throw std::runtime_error("telemetry CSV line " + std::to_string(line_no) + ": bad value in " +
                                 cols[i].name);
      }
      cols[i].set(f, v);
    }
    frames.push_back(f);
  }
  return frames;
}

RunSummary summarize(const std::vector<TelemetryFrame>& frames) {
  RunSummary s;
  s.frames = frames.size();
  if (frames.empty()) return s;
  s.duration = frames.back().t;

  std::size_t tracking = 0, seen = 0;
  for (const auto& f : frames) {
    if (!f.tracking) continue;
    ++tracking;
    if (!f.in_frame) continue;
    ++seen;
    const double e = std::hypot(f.px_err_x, f.px_err_y);
    if (std::isfinite(e)) s.max_pixel_error = std::max(s.max_pixel_error, e);
  }
  s.tracked_fraction = tracking ? static_cast<double>(seen) / static_cast<double>(tracking) : 0.0;

  for (std::size_t i = 0; i < frames.size();) {
    const std::int64_t id = frames[i].waypoint_id;
    std::size_t j = i;
    while (j < frames.size() && frames[j].waypoint_id == id) ++j;
    if (id >= 0) {
      SegmentSummary seg;
      seg.waypoint_id = id;
      seg.t_start = frames[i].t;
      seg.t_end = frames[j - 1].t;
      for (std::size_t k = i; k < j; ++k) {
        const auto& f = frames[k];
        if (std::isfinite(f.smooth_d)) seg.peak_d = std::max(seg.peak_d, f.smooth_d);
        if (seg.convergence_time < 0.0 && f.waypoint_reached) seg.convergence_time = f.t - seg.t_start;
      }
      const auto& last = frames[j - 1];
      seg.final_d = last.smooth_d;
      seg.final_alpha = last.smooth_alpha;
      seg.final_true_d = last.true_d;
      seg.final_true_alpha = last.true_alpha;
      double sd = 0.0, std_ = 0.0, sas = 0.0, sac = 0.0, stas = 0.0, stac = 0.0;
      std::size_t n = 0, nt = 0;
      for (std::size_t k = i; k < j; ++k) {
        const auto& f = frames[k];
        if (f.t < seg.t_end - kSteadyWindow) continue;
        if (std::isfinite(f.smooth_d) && std::isfinite(f.smooth_alpha)) {
          sd += f.smooth_d;
          sas += std::sin(f.smooth_alpha);
          sac += std::cos(f.smooth_alpha);
          ++n;
        }
        if (std::isfinite(f.true_d)) {
          std_ += f.true_d;
          stas += std::sin(f.true_alpha);
          stac += std::cos(f.true_alpha);
          ++nt;
        }
      }
      constexpr double nan = std::numeric_limits<double>::quiet_NaN();
      seg.steady_d = n ? sd / static_cast<double>(n) : nan;
      seg.steady_alpha = n ? std::atan2(sas, sac) : nan;
      seg.steady_true_d = nt ? std_ / static_cast<double>(nt) : nan;
      seg.steady_true_alpha = nt ? std::atan2(stas, stac) : nan;
      s.segments.push_back(seg);
    }
    i = j;
  }
  return s;
}

std::string summary_json(const RunSummary& s) {
  nlohmann::ordered_json j;
  j["frames"] = s.frames;
  j["duration"] = s.duration;
  j["max_pixel_error"] = s.max_pixel_error;
  j["tracked_fraction"] = s.tracked_fraction;
  j["segments"] = nlohmann::ordered_json::array();
  auto num = [](double v) -> nlohmann::ordered_json {
    if (std::isfinite(v)) return v;
    return nullptr;
  };
  for (const auto& seg : s.segments) {
    nlohmann::ordered_json o;
    o["waypoint_id"] = seg.waypoint_id;
    o["t_start"] = seg.t_start;
    o["t_end"] = seg.t_end;
    o["peak_d"] = num(seg.peak_d);
    o["final_d"] = num(seg.final_d);
    o["final_alpha_deg"] = num(rad2deg(seg.final_alpha));
    o["final_true_d"] = num(seg.final_true_d);
    o["final_true_alpha_deg"] = num(rad2deg(seg.final_true_alpha));
    o["steady_d"] = num(seg.steady_d);
    o["steady_alpha_deg"] = num(rad2deg(seg.steady_alpha));
    o["steady_true_d"] = num(seg.steady_true_d);
    o["steady_true_alpha_deg"] = num(rad2deg(seg.steady_true_alpha));
    o["convergence_time"] = seg.convergence_time < 0.0 ? nlohmann::ordered_json(nullptr)
                                                      : nlohmann::ordered_json(seg.convergence_time);
    j["segments"].push_back(o);
  }
  return j.dump(2);
}

}  // namespace agc

#include "agc/scenario.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include "agc/format.hpp"

namespace agc {

namespace {

using Setter = std::function<void(Scenario&, std::string_view, const std::string&)>;
using Getter = std::function<std::string(const Scenario&)>;

struct Field {
  std::string section;
  std::string key;
  Setter set;
  Getter get;
  std::string name() const { return section + "." + key; }
};

[[noreturn]] void bad_value(const std::string& name, std::string_view v, const char* expected) {
  throw ConfigError(name, 0, name + ": expected " + expected + ", got '" + std::string(v) + "'");
}

template <typename Ref>
Field number(const char* sec, const char* key, Ref ref) {
  return {sec, key,
          [ref](Scenario& s, std::string_view v, const std::string& name) {
            double x = 0.0;
            if (!parse_double(v, x) || !std::isfinite(x)) bad_value(name, v, "a finite number");
            ref(s) = x;
          },
          [ref](const Scenario& s) { return format_double(ref(const_cast<Scenario&>(s))); }};
}

template <typename Ref>
Field integer(const char* sec, const char* key, Ref ref) {
  return {sec, key,
          [ref](Scenario& s, std::string_view v, const std::string& name) {
            double x = 0.0;
            if (!parse_double(v, x) || x != std::floor(x) || std::abs(x) > 1e9) {
              bad_value(name, v, "an integer");
            }
            ref(s) = static_cast<int>(x);
          },
          [ref](const Scenario& s) { return std::to_string(ref(const_cast<Scenario&>(s))); }};
}

template <typename Ref>
Field boolean(const char* sec, const char* key, Ref ref) {
  return {sec, key,
          [ref](Scenario& s, std::string_view v, const std::string& name) {
            if (v == "true" || v == "1") ref(s) = true;
            else if (v == "false" || v == "0") ref(s) = false;
            else bad_value(name, v, "true or false");
          },
          [ref](const Scenario& s) {
            return std::string(ref(const_cast<Scenario&>(s)) ? "true" : "false");
          }};
}

template <typename Enum, typename Ref>
Field choice(const char* sec, const char* key, Ref ref, const char* a, Enum ea, const char* b,
             Enum eb) {
  return {sec, key,
          [=](Scenario& s, std::string_view v, const std::string& name) {
            if (v == a) ref(s) = ea;
            else if (v == b) ref(s) = eb;
            else bad_value(name, v, (std::string(a) + " or " + b).c_str());
          },
          [=](const Scenario& s) {
            return std::string(ref(const_cast<Scenario&>(s)) == ea ? a : b);
          }};
}

void parse_clicks(Scenario& s, std::string_view v, const std::string& name) {
  s.clicks.clear();
  std::string text(v);
  std::stringstream entries(text);
  std::string entry;
  while (std::getline(entries, entry, ';')) {
    std::istringstream parts(entry);
    std::string a, b, c, extra;
    if (!(parts >> a)) continue;  // blank entry
    double t = 0, x = 0, y = 0;
    if (!(parts >> b >> c) || (parts >> extra) || !parse_double(a, t) || !parse_double(b, x) ||
        !parse_double(c, y)) {
      bad_value(name, entry, "'t x_px y_px' triples separated by ';'");
    }
    s.clicks.push_back({t, {x, y}});
  }
}

std::string format_clicks(const Scenario& s) {
  std::string out;
  for (std::size_t i = 0; i < s.clicks.size(); ++i) {
    if (i) out += "; ";
    out += format_double(s.clicks[i].t) + " " + format_double(s.clicks[i].pixel.x) + " " +
           format_double(s.clicks[i].pixel.y);
  }
  return out;
}

#define REF(expr) [](Scenario& s) -> auto& { return s.expr; }

const std::vector<Field>& fields() {
  static const std::vector<Field> table = {
      number("sim", "duration", REF(duration)),
      number("sim", "dt", REF(dt)),
      {"sim", "seed",
       [](Scenario& s, std::string_view v, const std::string& name) {
         std::uint64_t x = 0;
         auto res = std::from_chars(v.data(), v.data() + v.size(), x);
         if (res.ec != std::errc() || res.ptr != v.data() + v.size()) {
           bad_value(name, v, "a non-negative integer");
         }
         s.seed = x;
       },
       [](const Scenario& s) { return std::to_string(s.seed); }},
      boolean("sim", "bypass_links", REF(bypass_links)),

      number("camera", "focal_length", REF(camera.focal_length)),
      number("camera", "pixel_pitch_x", REF(camera.pixel_pitch_x)),
      number("camera", "pixel_pitch_y", REF(camera.pixel_pitch_y)),
      number("camera", "principal_x", REF(camera.principal_x)),
      number("camera", "principal_y", REF(camera.principal_y)),
      integer("camera", "image_width", REF(camera.image_width)),
      integer("camera", "image_height", REF(camera.image_height)),
      boolean("camera", "tilt_projection", REF(tilt_projection)),

      number("ugv", "x0", REF(ugv_initial.x)),
      number("ugv", "y0", REF(ugv_initial.y)),
      number("ugv", "psi0", REF(ugv_initial.psi)),
      number("ugv", "K", REF(ugv.K)),
      number("ugv", "L", REF(ugv.L)),
      number("ugv", "u_max", REF(ugv.u_max)),
      number("ugv", "r_max", REF(ugv.r_max)),
      number("ugv", "tau_act", REF(ugv.tau_act)),
      number("ugv", "command_timeout", REF(ugv.command_timeout)),

      number("uav", "x0", REF(uav_initial.x)),
      number("uav", "y0", REF(uav_initial.y)),
      number("uav", "z0", REF(uav_initial.z)),
      number("uav", "m", REF(uav.m)),
      number("uav", "K1", REF(uav.K1)),
      number("uav", "K2", REF(uav.K2)),
      number("uav", "tau_att", REF(uav.tau_att)),
      number("uav", "z_d", REF(uav.z_d)),
      number("uav", "z_min", REF(uav.z_min)),
      number("uav", "z_max", REF(uav.z_max)),
      number("uav", "angle_max", REF(uav.angle_max)),
      number("uav", "g", REF(uav.g)),
      number("uav", "omega_z", REF(uav.omega_z)),
      choice("uav", "servo_units", REF(uav.servo_units), "metric", ServoUnits::metric, "pixel",
             ServoUnits::pixel),
      number("uav", "b", REF(uav.b)),
      number("uav", "d", REF(uav.d)),
      number("uav", "J_r", REF(uav.J_r)),
      number("uav", "L_arm", REF(uav.L_arm)),
      number("uav", "I_x", REF(uav.I_x)),
      number("uav", "I_y", REF(uav.I_y)),
      number("uav", "I_z", REF(uav.I_z)),

      number("noise", "pixel_stddev", REF(noise.pixel_stddev)),
      number("noise", "dropout_prob", REF(noise.dropout_prob)),

      number("video_link", "latency_mean", REF(video_link.latency_mean)),
      number("video_link", "latency_jitter", REF(video_link.latency_jitter)),
      number("video_link", "loss_prob", REF(video_link.loss_prob)),
      number("video_link", "rate_hz", REF(video_link.rate_hz)),
      number("command_link", "latency_mean", REF(command_link.latency_mean)),
      number("command_link", "latency_jitter", REF(command_link.latency_jitter)),
      number("command_link", "loss_prob", REF(command_link.loss_prob)),
      number("command_link", "rate_hz", REF(command_link.rate_hz)),

      choice("smoothing", "rate", REF(station.smoothing_rate), "camera", SmoothingRate::camera,
             "command", SmoothingRate::command),
      number("smoothing", "gamma_d", REF(station.des_d.gamma)),
      number("smoothing", "lambda_d", REF(station.des_d.lambda)),
      number("smoothing", "gamma_alpha", REF(station.des_alpha.gamma)),
      number("smoothing", "lambda_alpha", REF(station.des_alpha.lambda)),
      number("smoothing", "gamma_x", REF(station.des_x.gamma)),
      number("smoothing", "lambda_x", REF(station.des_x.lambda)),
      number("smoothing", "gamma_y", REF(station.des_y.gamma)),
      number("smoothing", "lambda_y", REF(station.des_y.lambda)),
      number("smoothing", "gamma_z", REF(station.des_z.gamma)),
      number("smoothing", "lambda_z", REF(station.des_z.lambda)),

      number("station", "arrival_epsilon", REF(station.arrival_epsilon)),
      number("station", "stale_timeout", REF(station.stale_timeout)),
      choice("station", "altitude_source", REF(station.altitude_source), "reported",
             AltitudeSource::reported, "markers", AltitudeSource::markers),

      {"clicks", "script", parse_clicks, format_clicks},
  };
  return table;
}

#undef REF

const Field* find_field(const std::string& section, const std::string& key) {
  for (const Field& f : fields()) {
    if (f.section == section && f.key == key) return &f;
  }
  return nullptr;
}

// Number of whole dt steps in `period`, or 0 when dt does not divide it.
std::int64_t whole_steps(double period, double dt) {
  const double ratio = period / dt;
  const double n = std::round(ratio);
  if (n < 1.0 || std::abs(ratio - n) > 1e-9 * n) return 0;
  return static_cast<std::int64_t>(n);
}

void check(bool ok, const char* field, const std::string& what) {
  if (!ok) throw ConfigError(field, 0, std::string(field) + ": " + what);
}

}  // namespace

std::int64_t Scenario::total_steps() const {
  return static_cast<std::int64_t>(std::floor(duration / dt + 1e-9));
}

std::int64_t Scenario::steps_per_command() const {
  return whole_steps(GroundStation::kCommandPeriod, dt);
}

std::int64_t Scenario::steps_per_frame() const { return whole_steps(frame_period(), dt); }

void Scenario::validate() const {
  check(std::isfinite(duration) && duration >= 0.0, "sim.duration", "must be non-negative");
  check(dt > 0.0, "sim.dt", "must be positive");
  check(steps_per_command() > 0, "sim.dt", "must divide the 20 ms command period");
  check(command_link.rate_hz == 50.0, "command_link.rate_hz", "the command link runs at 50 Hz");
  check(video_link.rate_hz > 0.0, "video_link.rate_hz", "must be positive");
  check(steps_per_frame() > 0, "video_link.rate_hz", "frame period must be a whole number of dt steps");

  // Module-level invariants carry their own field names.
  try {
    camera.validate();
    ugv.validate();
    uav.validate();
    noise.validate();
    video_link.validate("video_link");
    command_link.validate("command_link");
    station.validate();
  } catch (const std::invalid_argument& e) {
    const std::string what = e.what();
    throw ConfigError(what.substr(0, what.find(' ')), 0, what);
  }
  check(uav_initial.z >= 0.0, "uav.z0", "must be non-negative");
  for (const auto& c : clicks) {
    check(c.t >= 0.0 && std::isfinite(c.pixel.x) && std::isfinite(c.pixel.y), "clicks.script",
          "click times must be non-negative and pixels finite");
  }
}

Scenario load_scenario(std::string_view text) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  std::istringstream in{std::string(text)};
  try {
    pt::ini_parser::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError("", e.line(), "line " + std::to_string(e.line()) + ": " + e.message());
  }

  Scenario s;
  for (const auto& [section, body] : tree) {
    if (!body.data().empty()) {
      throw ConfigError(section, 0, "key '" + section + "' outside of any section");
    }
    bool known = false;
    for (const Field& f : fields()) known = known || f.section == section;
    if (!known) throw ConfigError(section, 0, "unknown section [" + section + "]");
    for (const auto& [key, value] : body) {
      const Field* f = find_field(section, key);
      if (!f) throw ConfigError(section + "." + key, 0, "unknown key '" + section + "." + key + "'");
      f->set(s, value.data(), f->name());
    }
  }
  s.validate();
  return s;
}

Scenario load_scenario_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario file '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return load_scenario(ss.str());
}

void apply_setting(Scenario& s, std::string_view name, std::string_view value) {
  const std::string full(name);
  const auto dot = full.find('.');
  const Field* f = dot == std::string::npos ? nullptr : find_field(full.substr(0, dot), full.substr(dot + 1));
  if (!f) throw ConfigError(full, 0, "unknown key '" + full + "'");
  f->set(s, value, full);
}

std::string to_config_text(const Scenario& s) {
  std::string out;
  std::string current;
  for (const Field& f : fields()) {
    if (f.section != current) {
      if (!current.empty()) out += "\n";
      out += "[" + f.section + "]\n";
      current = f.section;
    }
    out += f.key + " = " + f.get(s) + "\n";
  }
  return out;
}

}  // namespace agc

#include "agc/protocol.hpp"

#include <cmath>
#include <sstream>

#include "agc/format.hpp"
#include "json.hpp"

namespace agc::protocol {

using json = nlohmann::ordered_json;

namespace {

json number_or_null(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

void add_frame_fields(json& j, const TelemetryFrame& frame) {
  // Reuse the CSV columns so stream and file share one vocabulary.
  std::string row;
  append_csv_row(row, frame);
  row.pop_back();
  const auto& names = telemetry_columns();
  std::size_t start = 0;
  for (const auto& name : names) {
    const std::size_t end = row.find(',', start);
    const std::string cell = row.substr(start, end == std::string::npos ? end : end - start);
    double v = 0.0;
    parse_double(cell, v);
    j[name] = number_or_null(v);
    start = end + 1;
  }
}

double member_number(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_number()) {
    throw ProtocolError(std::string("member '") + key + "' must be a number");
  }
  const double v = it->get<double>();
  if (!std::isfinite(v)) throw ProtocolError(std::string("member '") + key + "' must be finite");
  return v;
}

}  // namespace

Inbound parse_inbound(std::string_view text) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ProtocolError(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw ProtocolError("message must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (value.is_object() || value.is_array()) {
      throw ProtocolError("message must be flat; member '" + key + "' is nested");
    }
  }
  auto type_it = j.find("type");
  if (type_it == j.end() || !type_it->is_string()) throw ProtocolError("missing string member 'type'");
  const std::string type = type_it->get<std::string>();

  if (type == "click") return Click{{member_number(j, "x_px"), member_number(j, "y_px")}};
  if (type == "pause") return Pause{};
  if (type == "resume") return Resume{};
  if (type == "reset") return Reset{};
  if (type == "set_param") {
    auto name = j.find("name");
    if (name == j.end() || !name->is_string()) throw ProtocolError("set_param needs a string 'name'");
    auto value = j.find("value");
    if (value == j.end()) throw ProtocolError("set_param needs a 'value'");
    std::string v;
    if (value->is_number()) v = format_double(value->get<double>());
    else if (value->is_string()) v = value->get<std::string>();
    else if (value->is_boolean()) v = value->get<bool>() ? "true" : "false";
    else throw ProtocolError("set_param 'value' must be a number, string or boolean");
    return SetParam{name->get<std::string>(), v};
  }
  throw ProtocolError("unknown message type '" + type + "'");
}

const char* kind_of(const Inbound& msg) {
  struct Visitor {
    const char* operator()(const Click&) const { return "click"; }
    const char* operator()(const Pause&) const { return "pause"; }
    const char* operator()(const Resume&) const { return "resume"; }
    const char* operator()(const Reset&) const { return "reset"; }
    const char* operator()(const SetParam&) const { return "set_param"; }
  };
  return std::visit(Visitor{}, msg);
}

std::string encode_snapshot(const Scenario& scenario, const TelemetryFrame& frame, bool paused,
                            int decimate) {
  json j;
  j["type"] = "snapshot";
  j["paused"] = paused;
  j["decimate"] = decimate;
  j["gain_x"] = scenario.camera.gain_x();
  j["gain_y"] = scenario.camera.gain_y();
  // Scenario parameters as "section.key" members.
  std::istringstream cfg(to_config_text(scenario));
  std::string line, section;
  while (std::getline(cfg, line)) {
    if (line.empty()) continue;
    if (line.front() == '[') {
      section = line.substr(1, line.size() - 2);
      continue;
    }
    const auto eq = line.find(" = ");
    const std::string key = section + "." + line.substr(0, eq);
    const std::string value = line.substr(eq + 3);
    double v = 0.0;
    if (parse_double(value, v)) j[key] = v;
    else if (value == "true" || value == "false") j[key] = value == "true";
    else j[key] = value;
  }
  add_frame_fields(j, frame);
  return j.dump();
}

std::string encode_frame(const TelemetryFrame& frame) {
  json j;
  j["type"] = "frame";
  add_frame_fields(j, frame);
  return j.dump();
}

std::string encode_event(const Event& e) {
  if (e.kind == EventKind::click_rejected) return encode_error(e.detail);
  json j;
  j["type"] = "event";
  j["event"] = to_string(e.kind);
  j["t"] = e.t;
  j["waypoint_id"] = e.waypoint_id;
  j["detail"] = e.detail;
  return j.dump();
}

std::string encode_ack(std::string_view request, std::optional<std::int64_t> id) {
  json j;
  j["type"] = "ack";
  j["request"] = std::string(request);
  j["id"] = id ? json(*id) : json(nullptr);
  return j.dump();
}

std::string encode_error(std::string_view reason) {
  json j;
  j["type"] = "error";
  j["reason"] = std::string(reason);
  return j.dump();
}

}  // namespace agc::protocol

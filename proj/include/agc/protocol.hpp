#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include "agc/camera.hpp"
#include "agc/scenario.hpp"
#include "agc/station.hpp"
#include "agc/telemetry.hpp"

// Operator wire protocol. Every message is one flat JSON object whose "type"
// member names the kind.
//
//   inbound:  click {x_px, y_px} | pause | resume | reset | set_param {name, value}
//   outbound: snapshot | frame | event {event, t, waypoint_id, detail}
//             | ack {request, id} | error {reason}
namespace agc::protocol {

class ProtocolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Click {
  PixelPoint pixel;
};
struct Pause {};
struct Resume {};
struct Reset {};
struct SetParam {
  std::string name;
  std::string value;
};

using Inbound = std::variant<Click, Pause, Resume, Reset, SetParam>;

/// Throws ProtocolError for malformed JSON, unknown kinds or bad members.
Inbound parse_inbound(std::string_view text);

const char* kind_of(const Inbound& msg);

std::string encode_snapshot(const Scenario& scenario, const TelemetryFrame& frame, bool paused,
                            int decimate);
std::string encode_frame(const TelemetryFrame& frame);
/// click_rejected events travel as `error`; the rest as `event`.
std::string encode_event(const Event& e);
std::string encode_ack(std::string_view request, std::optional<std::int64_t> id);
std::string encode_error(std::string_view reason);

}  // namespace agc::protocol

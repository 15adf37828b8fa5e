#include "agc/netlink.hpp"

#include <string>

namespace agc {

void ChannelParams::validate(const char* name) const {
  const std::string prefix = std::string(name) + ".";
  if (!(latency_mean >= 0.0)) throw std::invalid_argument(prefix + "latency_mean must be non-negative");
  if (!(latency_jitter >= 0.0)) throw std::invalid_argument(prefix + "latency_jitter must be non-negative");
  if (!(loss_prob >= 0.0 && loss_prob <= 1.0)) {
    throw std::invalid_argument(prefix + "loss_prob must lie in [0, 1]");
  }
  if (!(rate_hz > 0.0)) throw std::invalid_argument(prefix + "rate_hz must be positive");
}

}  // namespace agc

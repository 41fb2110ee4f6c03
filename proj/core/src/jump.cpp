#include "hidwire/jump.hpp"

#include <cmath>
#include <string>

#include "hidwire/error.hpp"

namespace hidwire::jump {

void JumpConfig::validate() const {
  if (!(t_low_g < t_high_g)) throw Error(Errc::InvalidConfig, "t_low_g must be below t_high_g");
  if (debounce_ms < 0) throw Error(Errc::InvalidConfig, "debounce_ms must be >= 0");
}

double magnitude(const joycon::Vec3& a) { return std::sqrt(a.x * a.x + a.y * a.y + a.z * a.z); }

JumpDetector::JumpDetector(JumpConfig config) : config_(config) { config_.validate(); }

std::optional<JumpEvent> JumpDetector::process_sample(std::int64_t t_ms, double m) {
  if (last_t_ && t_ms < *last_t_) {
    throw Error(Errc::NonMonotoneTime, std::to_string(t_ms) + " after " + std::to_string(*last_t_));
  }
  last_t_ = t_ms;

  const bool above = m > config_.t_high_g;
  const bool starts_excursion = above && !previous_above_;
  previous_above_ = above;

  if (triggered_) {
    if (m < config_.t_low_g) {
      triggered_ = false;
    } else if (m > last_jump_->peak_g) {
      last_jump_->peak_g = m;
    }
    return std::nullopt;
  }

  if (starts_excursion && (!last_jump_ || t_ms - last_jump_->t_ms >= config_.debounce_ms)) {
    triggered_ = true;
    last_jump_ = JumpEvent{t_ms, m};
    return last_jump_;
  }
  return std::nullopt;
}

std::vector<JumpEvent> detect_jumps(std::span<const TracePoint> trace, const JumpConfig& config) {
  JumpDetector detector(config);
  std::vector<JumpEvent> events;
  for (const auto& [t_ms, frame] : trace) {
    if (auto e = detector.process_sample(t_ms, magnitude(frame))) events.push_back(*e);
  }
  return events;
}

}  // namespace hidwire::jump

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "hidwire/joycon.hpp"

namespace hidwire::jump {

struct JumpConfig {
  double t_high_g = 1.8;  // fire above this magnitude
  double t_low_g = 1.2;  // re-arm below this magnitude
  std::int64_t debounce_ms = 250;  // minimum gap between emitted jumps

  /// Throws InvalidConfig unless t_low_g < t_high_g and debounce_ms >= 0.
  void validate() const;
};

struct JumpEvent {
  std::int64_t t_ms = 0;
  double peak_g = 0.0;

  friend bool operator==(const JumpEvent&, const JumpEvent&) = default;
};

/// Euclidean norm of the accelerometer vector, in g.
double magnitude(const joycon::Vec3& accel);
inline double magnitude(const joycon::ImuFrame& frame) { return magnitude(frame.accel); }

/// Two-state hysteresis detector over acceleration magnitude.
///
/// ARMED: the first sample of an excursion above t_high_g fires a jump if at
/// least debounce_ms passed since the previous jump, and the detector moves
/// to TRIGGERED. An excursion that starts inside the debounce window is
/// ignored until it ends.
/// TRIGGERED: tracks the excursion peak; a sample below t_low_g re-arms.
class JumpDetector {
 public:
  explicit JumpDetector(JumpConfig config = {});

  /// Throws NonMonotoneTime if t_ms goes backwards.
  std::optional<JumpEvent> process_sample(std::int64_t t_ms, double magnitude_g);

  bool triggered() const { return triggered_; }
  /// Peak of the excursion that produced the latest jump, updated while it
  /// lasts.
  std::optional<JumpEvent> last_jump() const { return last_jump_; }
  const JumpConfig& config() const { return config_; }

 private:
  JumpConfig config_;
  bool triggered_ = false;
  bool previous_above_ = false;
  std::optional<std::int64_t> last_t_;
  std::optional<JumpEvent> last_jump_;
};

using TracePoint = std::pair<std::int64_t, joycon::ImuFrame>;

/// Folds process_sample over the trace with a fresh detector.
std::vector<JumpEvent> detect_jumps(std::span<const TracePoint> trace, const JumpConfig& config);

}  // namespace hidwire::jump

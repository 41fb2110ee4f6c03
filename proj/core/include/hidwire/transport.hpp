#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "hidwire/device.hpp"
#include "hidwire/hex.hpp"

namespace hidwire {

/// Advance-only millisecond clock.
class VirtualClock {
 public:
  std::int64_t now_ms() const { return now_ms_; }
  /// Moves to max(now, t_ms); never goes backwards.
  void advance_to(std::int64_t t_ms);
  void advance_by(std::int64_t delta_ms);

 private:
  std::int64_t now_ms_ = 0;
};

/// One line of a replay log.
struct ReplayRecord {
  std::int64_t t_ms = 0;
  std::uint8_t report_id = 0;
  Bytes data;

  friend bool operator==(const ReplayRecord&, const ReplayRecord&) = default;
};

/// Captured send_report payload.
struct OutboundRecord {
  std::int64_t t_ms = 0;
  std::uint8_t report_id = 0;
  Bytes data;

  friend bool operator==(const OutboundRecord&, const OutboundRecord&) = default;
};

// Replay logs are UTF-8 JSONL, one object per line with exactly the keys
// t_ms (integer), reportId (0-255) and data (lowercase even-length hex).
// Blank lines are skipped. Line numbers in errors are 1-based.

/// Throws ParseError or NonMonotoneTimestamp; the message carries the line.
std::vector<ReplayRecord> load_replay(std::istream& in);
std::vector<ReplayRecord> load_replay(const std::filesystem::path& path);

/// Writes `{"t_ms":N,"reportId":N,"data":"hex"}` lines.
void write_replay_record(std::ostream& out, const ReplayRecord& record);
void write_replay(std::ostream& out, std::span<const ReplayRecord> records);

/// Deterministic in-process transport: owns the virtual clock, feeds replay
/// records into a registry and captures output reports per device.
class SimulatedTransport : public OutputSink {
 public:
  VirtualClock& clock() { return clock_; }
  const VirtualClock& clock() const { return clock_; }

  void write_output(const DeviceId& device, std::uint8_t report_id, std::span<const std::uint8_t> data) override;

  /// Injects one report at the current clock time and delivers it.
  void inject(DeviceRegistry& registry, const DeviceId& device, std::uint8_t report_id,
              std::span<const std::uint8_t> data);

  /// Advances the clock to each record's t_ms, injects it and drains the
  /// registry. Stops before the first record past `until_ms`. Returns the
  /// number of records injected; closed devices still consume records.
  /// Throws DeviceDetached.
  std::size_t run_replay(DeviceRegistry& registry, const DeviceId& device, std::span<const ReplayRecord> records,
                         std::optional<std::int64_t> until_ms = std::nullopt);

  std::vector<OutboundRecord> outbound_log(const DeviceId& device) const;

 private:
  VirtualClock clock_;
  std::map<DeviceId, std::vector<OutboundRecord>> outbound_;
};

}  // namespace hidwire

#pragma once

#include <functional>
#include <optional>
#include <string>

#include "hidwire/device.hpp"
#include "hidwire/joycon.hpp"
#include "hidwire/jump.hpp"
#include "hidwire/transport.hpp"
#include "messages.hpp"

namespace hidwire::cli {

/// Turns Joy-Con input reports into button, imu and jump messages.
class JoyConPipeline {
 public:
  using Sink = std::function<void(const EventMessage&)>;

  JoyConPipeline(const jump::JumpConfig& config, Sink sink, joycon::Diagnostics* diagnostics = nullptr);

  void on_report(const InputReportEvent& event);

 private:
  jump::JumpDetector detector_;
  Sink sink_;
  joycon::Diagnostics* diagnostics_;
  std::optional<std::int64_t> last_frame_t_;
};

/// A simulated Joy-Con wired through the full device model: connected,
/// granted through the Joy-Con filters, opened, switched to standard mode
/// with the IMU on, and subscribed to a pipeline.
class SimulatedJoyConRig {
 public:
  SimulatedJoyConRig(joycon::Side side, const jump::JumpConfig& config, JoyConPipeline::Sink sink,
                     joycon::Diagnostics* diagnostics = nullptr);

  SimulatedJoyConRig(const SimulatedJoyConRig&) = delete;
  SimulatedJoyConRig& operator=(const SimulatedJoyConRig&) = delete;

  DeviceRegistry& registry() { return registry_; }
  SimulatedTransport& transport() { return transport_; }
  const DeviceId& device() const { return device_; }

  std::size_t replay(std::span<const ReplayRecord> records) {
    return transport_.run_replay(registry_, device_, records);
  }
  void inject(std::uint8_t report_id, std::span<const std::uint8_t> data) {
    transport_.inject(registry_, device_, report_id, data);
  }

 private:
  PermissionStore store_;
  SimulatedTransport transport_;
  DeviceRegistry registry_;
  DeviceId device_;
  joycon::Session session_;
  JoyConPipeline pipeline_;
};

}  // namespace hidwire::cli

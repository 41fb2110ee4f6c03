#include "pipeline.hpp"

#include <algorithm>

namespace hidwire::cli {

JoyConPipeline::JoyConPipeline(const jump::JumpConfig& config, Sink sink, joycon::Diagnostics* diagnostics)
    : detector_(config), sink_(std::move(sink)), diagnostics_(diagnostics) {}

void JoyConPipeline::on_report(const InputReportEvent& event) {
  if (event.data.empty()) return;
  if (event.report_id == joycon::kSimpleReportId) {
    if (auto button = joycon::decode_simple_button(event.device.product_id, event.report_id, event.data, event.t_ms,
                                                   diagnostics_)) {
      sink_(ButtonMessage{*button});
    }
    return;
  }
  if (event.report_id != joycon::kStandardReportId) return;
  if (event.data.size() < joycon::kStandardReportLength) {
    if (diagnostics_ != nullptr) diagnostics_->push_back("short standard report dropped");
    return;
  }
  const auto report = joycon::decode_standard_report(event.report_id, event.data, event.t_ms);
  for (auto frame : report.frames) {
    // Reports spaced closer than the frame span would overlap.
    if (last_frame_t_) frame.t_ms = std::max(frame.t_ms, *last_frame_t_);
    last_frame_t_ = frame.t_ms;
    sink_(ImuMessage{frame});
    if (auto jump = detector_.process_sample(frame.t_ms, jump::magnitude(frame))) sink_(JumpMessage{*jump});
  }
}

SimulatedJoyConRig::SimulatedJoyConRig(joycon::Side side, const jump::JumpConfig& config, JoyConPipeline::Sink sink,
                                       joycon::Diagnostics* diagnostics)
    : registry_(store_, transport_), pipeline_(config, std::move(sink), diagnostics) {
  const auto pid = joycon::product_id(side);
  registry_.connect(joycon::kNintendoVendorId, pid,
                    side == joycon::Side::Left ? "Joy-Con (L)" : "Joy-Con (R)",
                    parse_descriptor(joycon::simulated_descriptor_bytes()));
  const auto filters = joycon::joycon_filters();
  device_ = registry_.request_device(filters, [](auto candidates) -> std::optional<std::size_t> {
                       if (candidates.empty()) return std::nullopt;
                       return 0;
                     }).id;
  registry_.open(device_);
  for (const auto& out : {session_.build_enable_imu_report(),
                          session_.build_set_mode_report(joycon::kStandardReportId)}) {
    registry_.send_report(device_, out.report_id, out.data);
  }
  registry_.subscribe_input_reports(device_, [this](const InputReportEvent& e) { pipeline_.on_report(e); });
}

}  // namespace hidwire::cli

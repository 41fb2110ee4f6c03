#include "hidwire/joycon.hpp"

#include <string>

#include "hidwire/error.hpp"

namespace hidwire::joycon {
namespace {

std::int16_t read_i16(std::span<const std::uint8_t> data, std::size_t offset) {
  return static_cast<std::int16_t>(data[offset] | (data[offset + 1] << 8));
}

void write_i16(Bytes& data, std::size_t offset, std::int16_t value) {
  const auto u = static_cast<std::uint16_t>(value);
  data[offset] = static_cast<std::uint8_t>(u & 0xff);
  data[offset + 1] = static_cast<std::uint8_t>(u >> 8);
}

}  // namespace

std::string_view side_name(Side side) { return side == Side::Left ? "left" : "right"; }

std::optional<Side> identify(std::uint16_t vendor_id, std::uint16_t product) {
  if (vendor_id != kNintendoVendorId) return std::nullopt;
  if (product == kLeftProductId) return Side::Left;
  if (product == kRightProductId) return Side::Right;
  return std::nullopt;
}

std::optional<Side> identify(const HidDevice& device) { return identify(device.vendor_id, device.product_id); }

std::uint16_t product_id(Side side) { return side == Side::Left ? kLeftProductId : kRightProductId; }

std::vector<DeviceFilter> joycon_filters() {
  return {
      DeviceFilter{kNintendoVendorId, kLeftProductId, std::nullopt, std::nullopt},
      DeviceFilter{kNintendoVendorId, kRightProductId, std::nullopt, std::nullopt},
  };
}

std::string_view button_name(Button button) {
  switch (button) {
    case Button::A: return "A";
    case Button::X: return "X";
    case Button::B: return "B";
    case Button::Y: return "Y";
  }
  return "?";
}

std::optional<ButtonEvent> decode_simple_button(std::uint16_t product, std::uint8_t report_id,
                                                std::span<const std::uint8_t> data, std::int64_t t_ms,
                                                Diagnostics* diagnostics) {
  if (data.empty()) throw Error(Errc::EmptyReport, "simple-mode report has no body");
  if (product != kRightProductId || report_id != kSimpleReportId) return std::nullopt;
  switch (data[0]) {
    case 0x00: return std::nullopt;
    case 0x01: return ButtonEvent{Button::A, t_ms};
    case 0x02: return ButtonEvent{Button::X, t_ms};
    case 0x04: return ButtonEvent{Button::B, t_ms};
    case 0x08: return ButtonEvent{Button::Y, t_ms};
    default:
      if (diagnostics != nullptr) {
        diagnostics->push_back("unmapped simple-mode button code 0x" + to_hex(data.first(1)) + " at t_ms=" +
                               std::to_string(t_ms));
      }
      return std::nullopt;
  }
}

double raw_to_physical(std::int16_t raw, SensorKind kind) {
  return static_cast<double>(raw) * (kind == SensorKind::Accel ? kAccelGPerLsb : kGyroDpsPerLsb);
}

StandardReport decode_standard_report(std::uint8_t report_id, std::span<const std::uint8_t> data, std::int64_t t_ms) {
  if (report_id != kStandardReportId) {
    throw Error(Errc::WrongMode, "report id " + std::to_string(report_id) + " is not standard mode 0x30");
  }
  if (data.size() < kStandardReportLength) {
    throw Error(Errc::ReportTooShort, std::to_string(data.size()) + " byte(s), need " +
                                          std::to_string(kStandardReportLength));
  }
  StandardReport report;
  report.buttons = static_cast<std::uint32_t>(data[2]) | static_cast<std::uint32_t>(data[3]) << 8 |
                   static_cast<std::uint32_t>(data[4]) << 16;
  for (std::size_t k = 0; k < kImuFramesPerReport; ++k) {
    const std::size_t base = kImuOffset + k * kImuFrameLength;
    RawImuSample& raw = report.raw[k];
    for (std::size_t axis = 0; axis < 3; ++axis) {
      raw.accel[axis] = read_i16(data, base + 2 * axis);
      raw.gyro[axis] = read_i16(data, base + 6 + 2 * axis);
    }
    ImuFrame& frame = report.frames[k];
    frame.accel = {raw_to_physical(raw.accel[0], SensorKind::Accel), raw_to_physical(raw.accel[1], SensorKind::Accel),
                   raw_to_physical(raw.accel[2], SensorKind::Accel)};
    frame.gyro = {raw_to_physical(raw.gyro[0], SensorKind::Gyro), raw_to_physical(raw.gyro[1], SensorKind::Gyro),
                  raw_to_physical(raw.gyro[2], SensorKind::Gyro)};
    frame.t_ms = t_ms + static_cast<std::int64_t>(k) * kImuFrameSpacingMs;
  }
  return report;
}

Bytes encode_standard_report(std::uint32_t buttons, std::span<const RawImuSample, kImuFramesPerReport> samples,
                             std::uint8_t timer) {
  Bytes data(kStandardReportLength, 0);
  data[0] = timer;
  data[2] = static_cast<std::uint8_t>(buttons & 0xff);
  data[3] = static_cast<std::uint8_t>((buttons >> 8) & 0xff);
  data[4] = static_cast<std::uint8_t>((buttons >> 16) & 0xff);
  for (std::size_t k = 0; k < kImuFramesPerReport; ++k) {
    const std::size_t base = kImuOffset + k * kImuFrameLength;
    for (std::size_t axis = 0; axis < 3; ++axis) {
      write_i16(data, base + 2 * axis, samples[k].accel[axis]);
      write_i16(data, base + 6 + 2 * axis, samples[k].gyro[axis]);
    }
  }
  return data;
}

OutputReport Session::subcommand(std::uint8_t id, std::uint8_t arg) {
  OutputReport report{kSubcommandReportId, Bytes(kSubcommandReportLength, 0)};
  report.data[0] = counter_;
  report.data[9] = id;
  report.data[10] = arg;
  counter_ = (counter_ + 1) & 0x0f;
  return report;
}

OutputReport Session::build_enable_imu_report() { return subcommand(kSubcommandEnableImu, 0x01); }

OutputReport Session::build_set_mode_report(std::uint8_t mode) {
  if (mode != kSimpleReportId && mode != kStandardReportId) {
    throw Error(Errc::InvalidMode, "mode " + std::to_string(mode));
  }
  return subcommand(kSubcommandSetMode, mode);
}

Bytes simulated_descriptor_bytes() {
  return {
      0x05, 0x01,        // Usage Page (Generic Desktop)
      0x09, 0x04,        // Usage (Joystick)
      0xa1, 0x01,        // Collection (Application)
      0x06, 0x00, 0xff,  //   Usage Page (Vendor 0xFF00)
      0x15, 0x00,        //   Logical Minimum (0)
      0x26, 0xff, 0x00,  //   Logical Maximum (255)
      0x75, 0x08,        //   Report Size (8)
      0x85, 0x3f,        //   Report ID (0x3F)
      0x95, 0x0b,        //   Report Count (11)
      0x09, 0x01,        //   Usage (1)
      0x81, 0x02,        //   Input (Data, Var, Abs)
      0x85, 0x30,        //   Report ID (0x30)
      0x95, 0x30,        //   Report Count (48)
      0x09, 0x02,        //   Usage (2)
      0x81, 0x02,        //   Input (Data, Var, Abs)
      0x85, 0x21,        //   Report ID (0x21)
      0x95, 0x30,        //   Report Count (48)
      0x09, 0x03,        //   Usage (3)
      0x81, 0x02,        //   Input (Data, Var, Abs)
      0x85, 0x01,        //   Report ID (0x01)
      0x95, 0x30,        //   Report Count (48)
      0x09, 0x04,        //   Usage (4)
      0x91, 0x02,        //   Output (Data, Var, Abs)
      0x85, 0x10,        //   Report ID (0x10)
      0x95, 0x08,        //   Report Count (8)
      0x09, 0x05,        //   Usage (5)
      0x91, 0x02,        //   Output (Data, Var, Abs)
      0xc0,              // End Collection
  };
}

}  // namespace hidwire::joycon

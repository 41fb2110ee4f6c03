#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hidwire/descriptor.hpp"
#include "hidwire/device.hpp"
#include "hidwire/hex.hpp"

// Nintendo Joy-Con driver.
//
// Report layouts (offsets are into the report body, i.e. after the id byte):
//
//   Input 0x3F, simple HID mode, 11 bytes
//     0      button code: 0x01 A, 0x02 X, 0x04 B, 0x08 Y (others unmapped)
//     1..10  remaining buttons, hat and sticks (not decoded)
//
//   Input 0x30, standard full mode, 48 bytes
//     0      timer
//     1      battery / connection info
//     2..4   24-bit button bitmap, little-endian
//     5..7   left stick, 8..10 right stick (12-bit packed, not decoded)
//     11     vibrator report
//     12..47 three IMU frames of 12 bytes each:
//              +0 accel X, +2 accel Y, +4 accel Z,
//              +6 gyro X,  +8 gyro Y,  +10 gyro Z   (int16 little-endian)
//            frame k is sampled at t + 5k ms
//
//   Output 0x01, rumble + subcommand, 48 bytes
//     0      packet counter, low nibble, wraps 0..15
//     1..8   rumble data (always zero here)
//     9      subcommand id: 0x40 enable IMU, 0x03 set input report mode
//     10     subcommand argument: 0x01 for IMU on, the mode for 0x03
//     11..47 zero
//
// Scales: accel 0.000244 g/LSB (+-8 g), gyro 0.06103 dps/LSB (+-2000 dps).

namespace hidwire::joycon {

inline constexpr std::uint16_t kNintendoVendorId = 0x057e;
inline constexpr std::uint16_t kLeftProductId = 0x2006;
inline constexpr std::uint16_t kRightProductId = 0x2007;

inline constexpr std::uint8_t kSimpleReportId = 0x3f;
inline constexpr std::uint8_t kStandardReportId = 0x30;
inline constexpr std::uint8_t kSubcommandReplyId = 0x21;
inline constexpr std::uint8_t kSubcommandReportId = 0x01;
inline constexpr std::uint8_t kRumbleReportId = 0x10;

inline constexpr std::uint8_t kSubcommandSetMode = 0x03;
inline constexpr std::uint8_t kSubcommandEnableImu = 0x40;

inline constexpr std::size_t kSimpleReportLength = 11;
inline constexpr std::size_t kStandardReportLength = 48;
inline constexpr std::size_t kSubcommandReportLength = 48;
inline constexpr std::size_t kRumbleReportLength = 8;
inline constexpr std::size_t kImuOffset = 12;
inline constexpr std::size_t kImuFrameLength = 12;
inline constexpr std::size_t kImuFramesPerReport = 3;
inline constexpr std::int64_t kImuFrameSpacingMs = 5;

inline constexpr double kAccelGPerLsb = 0.000244;
inline constexpr double kGyroDpsPerLsb = 0.06103;

enum class Side { Left, Right };

std::string_view side_name(Side side);

/// Left for (0x057e, 0x2006), Right for (0x057e, 0x2007).
std::optional<Side> identify(std::uint16_t vendor_id, std::uint16_t product_id);
std::optional<Side> identify(const HidDevice& device);

std::uint16_t product_id(Side side);

/// The two vendor/product filters used to ask for either Joy-Con.
std::vector<DeviceFilter> joycon_filters();

enum class Button { A, X, B, Y };

std::string_view button_name(Button button);

struct ButtonEvent {
  Button button = Button::A;
  std::int64_t t_ms = 0;

  friend bool operator==(const ButtonEvent&, const ButtonEvent&) = default;
};

/// Receives one line per dropped-but-suspicious input.
using Diagnostics = std::vector<std::string>;

/// Simple-mode decode restricted to the right Joy-Con. Only
/// productId 0x2007 with report 0x3F is considered; code 0 and codes other
/// than 1/2/4/8 yield nullopt (the latter with a note). Throws EmptyReport.
std::optional<ButtonEvent> decode_simple_button(std::uint16_t product_id, std::uint8_t report_id,
                                                std::span<const std::uint8_t> data, std::int64_t t_ms = 0,
                                                Diagnostics* diagnostics = nullptr);

enum class SensorKind { Accel, Gyro };

double raw_to_physical(std::int16_t raw, SensorKind kind);

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend bool operator==(const Vec3&, const Vec3&) = default;
};

struct ImuFrame {
  Vec3 accel;  // g
  Vec3 gyro;  // degrees per second
  std::int64_t t_ms = 0;

  friend bool operator==(const ImuFrame&, const ImuFrame&) = default;
};

struct RawImuSample {
  std::array<std::int16_t, 3> accel{};
  std::array<std::int16_t, 3> gyro{};

  friend bool operator==(const RawImuSample&, const RawImuSample&) = default;
};

struct StandardReport {
  std::uint32_t buttons = 0;  // 24 bits
  std::array<RawImuSample, kImuFramesPerReport> raw{};
  std::array<ImuFrame, kImuFramesPerReport> frames{};
};

/// Throws WrongMode when `report_id` is not 0x30 and ReportTooShort when the
/// body holds fewer than 48 bytes.
StandardReport decode_standard_report(std::uint8_t report_id, std::span<const std::uint8_t> data, std::int64_t t_ms = 0);

/// Builds a 48-byte 0x30 body from a button bitmap and raw IMU samples. Used
/// by the simulator and fixture generation.
Bytes encode_standard_report(std::uint32_t buttons, std::span<const RawImuSample, kImuFramesPerReport> samples,
                             std::uint8_t timer = 0);

struct OutputReport {
  std::uint8_t report_id = 0;
  Bytes data;

  friend bool operator==(const OutputReport&, const OutputReport&) = default;
};

/// Stateful side of the driver: owns the rolling packet counter.
class Session {
 public:
  explicit Session(std::uint8_t counter = 0) : counter_(counter & 0x0f) {}

  OutputReport build_enable_imu_report();
  /// `mode` must be 0x3F or 0x30; throws InvalidMode.
  OutputReport build_set_mode_report(std::uint8_t mode);

  std::uint8_t counter() const { return counter_; }

 private:
  OutputReport subcommand(std::uint8_t id, std::uint8_t arg);

  std::uint8_t counter_;
};

/// Report descriptor of the simulated controller: one Joystick application
/// collection declaring the reports listed above.
Bytes simulated_descriptor_bytes();

}  // namespace hidwire::joycon

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "hidwire/error.hpp"
#include "hidwire/joycon.hpp"

namespace hidwire::joycon {
namespace {

bool close_rel(double actual, double expected, double rel = 1e-9) {
  return std::fabs(actual - expected) <= rel * std::fabs(expected);
}

TEST(IdentifyTest, JoyConIds) {
  EXPECT_EQ(identify(0x057e, 0x2006), Side::Left);
  EXPECT_EQ(identify(0x057e, 0x2007), Side::Right);
  EXPECT_EQ(identify(0x054c, 0x05c4), std::nullopt);
  EXPECT_EQ(identify(0x057e, 0x2009), std::nullopt);
  EXPECT_EQ(product_id(Side::Left), 0x2006);
}

TEST(IdentifyTest, ConsistentWithFilters) {
  const auto filters = joycon_filters();
  for (std::uint16_t vid : {0x057e, 0x054c}) {
    for (std::uint16_t pid : {0x2005, 0x2006, 0x2007, 0x05c4}) {
      HidDevice d;
      d.vendor_id = vid;
      d.product_id = pid;
      EXPECT_EQ(identify(d).has_value(), matches_any(d, filters)) << vid << ":" << pid;
    }
  }
}

TEST(SimpleButtonTest, RightJoyConCodeMap) {
  const std::pair<std::uint8_t, Button> table[] = {{1, Button::A}, {2, Button::X}, {4, Button::B}, {8, Button::Y}};
  for (auto [code, button] : table) {
    const Bytes body{code};
    const auto event = decode_simple_button(kRightProductId, kSimpleReportId, body, 42);
    ASSERT_TRUE(event.has_value());
    EXPECT_EQ(*event, (ButtonEvent{button, 42}));
    EXPECT_FALSE(decode_simple_button(kLeftProductId, kSimpleReportId, body).has_value());
    EXPECT_FALSE(decode_simple_button(kRightProductId, kStandardReportId, body).has_value());
  }
  EXPECT_FALSE(decode_simple_button(kRightProductId, kSimpleReportId, Bytes{0}).has_value());
}

TEST(SimpleButtonTest, UnmappedCodesAreNotedAndDropped) {
  Diagnostics notes;
  EXPECT_FALSE(decode_simple_button(kRightProductId, kSimpleReportId, Bytes{0x03}, 0, &notes).has_value());
  EXPECT_EQ(notes.size(), 1u);
  EXPECT_FALSE(decode_simple_button(kRightProductId, kSimpleReportId, Bytes{0x00}, 0, &notes).has_value());
  EXPECT_EQ(notes.size(), 1u);
}

TEST(SimpleButtonTest, EmptyReportThrows) {
  try {
    decode_simple_button(kRightProductId, kSimpleReportId, Bytes{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::EmptyReport);
  }
}

TEST(RawToPhysicalTest, Scales) {
  EXPECT_EQ(raw_to_physical(0, SensorKind::Accel), 0.0);
  EXPECT_TRUE(close_rel(raw_to_physical(4096, SensorKind::Accel), 0.999424));
  EXPECT_TRUE(close_rel(raw_to_physical(-1, SensorKind::Gyro), -0.06103));
  EXPECT_TRUE(close_rel(raw_to_physical(-32768, SensorKind::Gyro), -32768 * 0.06103));
}

TEST(StandardReportTest, DecodesLayout) {
  Bytes body(kStandardReportLength, 0);
  body[2] = 0x01;
  body[4] = 0x80;
  body[12] = 0x00;  // frame 0 accel X = 0x1000
  body[13] = 0x10;
  body[12 + 10] = 0xff;  // frame 0 gyro Z = -1
  body[12 + 11] = 0xff;
  const auto r = decode_standard_report(kStandardReportId, body, 100);
  EXPECT_EQ(r.buttons, 0x800001u);
  EXPECT_EQ(r.raw[0].accel[0], 4096);
  EXPECT_TRUE(close_rel(r.frames[0].accel.x, 0.999424));
  EXPECT_TRUE(close_rel(r.frames[0].gyro.z, -0.06103));
  EXPECT_EQ(r.frames[0].t_ms, 100);
  EXPECT_EQ(r.frames[2].t_ms, 110);
}

TEST(StandardReportTest, AllZero) {
  const auto r = decode_standard_report(kStandardReportId, Bytes(kStandardReportLength, 0));
  EXPECT_EQ(r.buttons, 0u);
  for (const auto& f : r.frames) {
    EXPECT_EQ(f.accel, Vec3{});
    EXPECT_EQ(f.gyro, Vec3{});
  }
}

TEST(StandardReportTest, Errors) {
  try {
    decode_standard_report(kStandardReportId, Bytes(47, 0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::ReportTooShort);
  }
  try {
    decode_standard_report(kSimpleReportId, Bytes(48, 0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::WrongMode);
  }
}

TEST(StandardReportTest, EncodeDecodeRecoversRawValues) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> raw(-32768, 32767);
  for (int i = 0; i < 500; ++i) {
    std::array<RawImuSample, 3> samples{};
    for (auto& s : samples) {
      for (auto& v : s.accel) v = static_cast<std::int16_t>(raw(rng));
      for (auto& v : s.gyro) v = static_cast<std::int16_t>(raw(rng));
    }
    const std::uint32_t buttons = rng() & 0xffffff;
    const auto r = decode_standard_report(kStandardReportId, encode_standard_report(buttons, samples));
    EXPECT_EQ(r.buttons, buttons);
    EXPECT_EQ(r.raw, samples);
    for (std::size_t k = 0; k < 3; ++k) {
      EXPECT_TRUE(r.frames[k].accel.y == samples[k].accel[1] * 0.000244 ||
                  close_rel(r.frames[k].accel.y, samples[k].accel[1] * 0.000244));
      EXPECT_TRUE(r.frames[k].gyro.x == samples[k].gyro[0] * 0.06103 ||
                  close_rel(r.frames[k].gyro.x, samples[k].gyro[0] * 0.06103));
    }
  }
}

TEST(SessionTest, SubcommandBytes) {
  Session session;
  const auto imu = session.build_enable_imu_report();
  EXPECT_EQ(imu.report_id, kSubcommandReportId);
  ASSERT_EQ(imu.data.size(), 48u);
  EXPECT_EQ(imu.data[0], 0);
  EXPECT_EQ(imu.data[9], 0x40);
  EXPECT_EQ(imu.data[10], 0x01);
  const auto mode = session.build_set_mode_report(0x30);
  EXPECT_EQ(mode.data[0], 1);
  EXPECT_EQ(mode.data[9], 0x03);
  EXPECT_EQ(mode.data[10], 0x30);
  try {
    session.build_set_mode_report(0x99);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::InvalidMode);
  }
}

TEST(SessionTest, CounterWraps) {
  Session session(15);
  EXPECT_EQ(session.build_enable_imu_report().data[0], 15);
  EXPECT_EQ(session.build_enable_imu_report().data[0], 0);
}

TEST(SimulatedDescriptorTest, DeclaresDriverReports) {
  const auto desc = parse_descriptor(simulated_descriptor_bytes());
  EXPECT_EQ(report_byte_length(desc, ReportKind::Input, kSimpleReportId), kSimpleReportLength);
  EXPECT_EQ(report_byte_length(desc, ReportKind::Input, kStandardReportId), kStandardReportLength);
  EXPECT_EQ(report_byte_length(desc, ReportKind::Output, kSubcommandReportId), kSubcommandReportLength);
  EXPECT_EQ(report_byte_length(desc, ReportKind::Output, kRumbleReportId), kRumbleReportLength);
  EXPECT_EQ(top_level_usages(desc), (std::vector<Usage>{{0x01, 0x04}}));
}

}  // namespace
}  // namespace hidwire::joycon

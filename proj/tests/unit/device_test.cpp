#include <filesystem>
#include <fstream>
#include <random>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "hidwire/device.hpp"
#include "hidwire/error.hpp"
#include "hidwire/transport.hpp"

namespace hidwire {
namespace {

ReportDescriptor top_level(std::uint16_t page, std::uint16_t usage) {
  Collection c;
  c.usage = {page, usage};
  c.type = 1;
  return ReportDescriptor{{c}};
}

ReportDescriptor joystick_with_reports() {
  // Joystick app collection: input report 1 (2 bytes), output report 2 (1 byte).
  return parse_descriptor(std::vector<std::uint8_t>{
      0x05, 0x01, 0x09, 0x04, 0xa1, 0x01, 0x85, 0x01, 0x15, 0x00, 0x26, 0xff, 0x00, 0x75, 0x08,
      0x95, 0x02, 0x09, 0x30, 0x09, 0x31, 0x81, 0x02, 0x85, 0x02, 0x95, 0x01, 0x91, 0x02, 0xc0});
}

Errc error_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an error";
  return Errc::InvalidConfig;
}

std::optional<std::size_t> pick_first(std::span<const HidDevice* const>) { return 0; }

class RegistryTest : public ::testing::Test {
 protected:
  PermissionStore store;
  SimulatedTransport transport;
  DeviceRegistry registry{store, transport};
};

TEST(DeviceIdTest, Format) { EXPECT_EQ(format_device_id(0x057e, 0x2007, 0), "057e:2007:0"); }

TEST(FilterTest, VendorProductTruthTable) {
  HidDevice d;
  d.vendor_id = 0x057e;
  d.product_id = 0x2007;
  d.descriptor = top_level(0x01, 0x05);
  EXPECT_TRUE(matches_filter(d, {}));
  EXPECT_TRUE(matches_filter(d, {0x057e, {}, {}, {}}));
  EXPECT_TRUE(matches_filter(d, {0x057e, 0x2007, {}, {}}));
  EXPECT_FALSE(matches_filter(d, {0x057e, 0x2006, {}, {}}));
  EXPECT_FALSE(matches_filter(d, {0x1234, {}, {}, {}}));
  EXPECT_TRUE(matches_filter(d, {{}, {}, 0x01, {}}));
  EXPECT_TRUE(matches_filter(d, {{}, {}, 0x01, 0x05}));
  EXPECT_FALSE(matches_filter(d, {{}, {}, 0x01, 0x04}));
  EXPECT_FALSE(matches_filter(d, {0x057e, 0x2007, 0x0c, {}}));
}

TEST(FilterTest, UsageMatchesAnyTopLevelCollection) {
  HidDevice d;
  d.descriptor = testing::fixture_descriptor("descriptors/keyboard_vendor.hex");
  EXPECT_TRUE(matches_filter(d, {{}, {}, 0xff00, 0x01}));
  EXPECT_TRUE(matches_filter(d, {{}, {}, 0x01, 0x06}));
  EXPECT_FALSE(matches_filter(d, {{}, {}, 0xff00, 0x06}));  // page and usage from different collections
}

TEST(FilterTest, ValidityRules) {
  EXPECT_TRUE((DeviceFilter{0x1, {}, {}, {}}.valid()));
  EXPECT_FALSE((DeviceFilter{{}, 0x2, {}, {}}.valid()));
  EXPECT_FALSE((DeviceFilter{{}, {}, {}, 0x2}.valid()));
}

// Property: matches_any is the disjunction of matches_filter.
TEST(FilterTest, AnyOfIsDisjunction) {
  std::mt19937 rng(5);
  auto maybe = [&](std::uint16_t a, std::uint16_t b) -> std::optional<std::uint16_t> {
    switch (rng() % 3) {
      case 0: return std::nullopt;
      case 1: return a;
      default: return b;
    }
  };
  for (int i = 0; i < 2000; ++i) {
    HidDevice d;
    d.vendor_id = rng() % 2 ? 0x057e : 0x1111;
    d.product_id = rng() % 2 ? 0x2006 : 0x2007;
    d.descriptor = top_level(rng() % 2 ? 0x01 : 0xff00, rng() % 2 ? 0x04 : 0x05);
    std::vector<DeviceFilter> filters(rng() % 4);
    for (auto& f : filters) f = {maybe(0x057e, 0x1111), maybe(0x2006, 0x2007), maybe(0x01, 0xff00), maybe(0x04, 0x05)};
    bool expected = filters.empty();
    for (const auto& f : filters) expected = expected || matches_filter(d, f);
    ASSERT_EQ(matches_any(d, filters), expected);
  }
}

TEST(ProtectionTest, Blocklist) {
  EXPECT_TRUE(is_protected(0x01, 0x06));
  EXPECT_TRUE(is_protected(0x01, 0x02));
  EXPECT_TRUE(is_protected(0x01, 0x07));
  EXPECT_TRUE(is_protected(0xf1d0, 0x01));
  EXPECT_TRUE(is_protected(0xf1d0, 0x00));
  EXPECT_FALSE(is_protected(0x01, 0x05));
  EXPECT_FALSE(is_protected(0x01, 0x04));
  EXPECT_FALSE(is_protected(0x0c, 0x01));
}

TEST_F(RegistryTest, ConnectAssignsOrdinals) {
  const auto a = registry.connect(0x057e, 0x2007, "a", top_level(0x01, 0x05));
  const auto b = registry.connect(0x057e, 0x2007, "b", top_level(0x01, 0x05));
  EXPECT_EQ(a, "057e:2007:0");
  EXPECT_EQ(b, "057e:2007:1");
  registry.disconnect(a);
  EXPECT_EQ(registry.connect(0x057e, 0x2007, "c", top_level(0x01, 0x05)), "057e:2007:0");
  EXPECT_EQ(error_of([&] { registry.disconnect("ffff:ffff:0"); }), Errc::UnknownDevice);
}

TEST_F(RegistryTest, RequestDeviceGrantsExactlyTheChosenDevice) {
  registry.connect(0x057e, 0x2006, "left", top_level(0x01, 0x05));
  const auto right = registry.connect(0x057e, 0x2007, "right", top_level(0x01, 0x05));
  std::vector<DeviceFilter> filters{{0x057e, 0x2007, {}, {}}};
  std::size_t offered = 0;
  const auto& chosen = registry.request_device(filters, [&](std::span<const HidDevice* const> c) {
    offered = c.size();
    return std::optional<std::size_t>(0);
  });
  EXPECT_EQ(offered, 1u);
  EXPECT_EQ(chosen.id, right);
  EXPECT_EQ(store.granted(), (std::set<DeviceId>{right}));
  ASSERT_EQ(registry.get_devices().size(), 1u);
  EXPECT_EQ(registry.get_devices()[0]->id, right);
}

TEST_F(RegistryTest, RequestDeviceErrors) {
  registry.connect(0x057e, 0x2007, "right", top_level(0x01, 0x05));
  std::vector<DeviceFilter> bad{{{}, 0x2007, {}, {}}};
  EXPECT_EQ(error_of([&] { registry.request_device(bad, pick_first); }), Errc::InvalidFilter);
  std::vector<DeviceFilter> none{{0x1234, {}, {}, {}}};
  EXPECT_EQ(error_of([&] { registry.request_device(none, pick_first); }), Errc::NoDeviceChosen);
  EXPECT_EQ(error_of([&] {
              registry.request_device({}, [](auto) { return std::optional<std::size_t>(); });
            }),
            Errc::NoDeviceChosen);
  EXPECT_EQ(store.size(), 0u);
}

TEST_F(RegistryTest, FullyProtectedDevicesAreNeverOffered) {
  registry.connect(0x046d, 0xc31c, "keyboard", top_level(0x01, 0x06));
  registry.connect(0x1050, 0x0407, "key", top_level(0xf1d0, 0x01));
  EXPECT_EQ(error_of([&] { registry.request_device({}, pick_first); }), Errc::NoDeviceChosen);
  const auto composite =
      registry.connect(0x046d, 0xc33f, "composite", testing::fixture_descriptor("descriptors/keyboard_vendor.hex"));
  EXPECT_EQ(registry.request_device({}, pick_first).id, composite);
}

TEST_F(RegistryTest, OpenCloseLifecycle) {
  const auto id = registry.connect(0x057e, 0x2007, "right", joystick_with_reports());
  EXPECT_EQ(error_of([&] { registry.open(id); }), Errc::NotGranted);
  registry.request_device({}, pick_first);
  registry.open(id);
  EXPECT_TRUE(registry.device(id).opened);
  EXPECT_EQ(error_of([&] { registry.open(id); }), Errc::AlreadyOpen);
  registry.close(id);
  EXPECT_EQ(error_of([&] { registry.close(id); }), Errc::NotOpen);
  EXPECT_EQ(error_of([&] { registry.subscribe_input_reports("0000:0000:0", [](auto&) {}); }), Errc::UnknownDevice);
}

TEST_F(RegistryTest, ListenersRunInRegistrationOrderFromPoll) {
  const auto id = registry.connect(0x057e, 0x2007, "right", joystick_with_reports());
  registry.request_device({}, pick_first);
  registry.open(id);
  std::vector<int> calls;
  registry.subscribe_input_reports(id, [&](const InputReportEvent& e) {
    calls.push_back(1);
    EXPECT_EQ(e.report_id, 1);
    EXPECT_EQ(e.data.size(), 2u);
  });
  registry.subscribe_input_reports(id, [&](const InputReportEvent&) { calls.push_back(2); });
  const Bytes body{0x10, 0x20};
  registry.inject_input_report(id, 1, body, 5);
  EXPECT_TRUE(calls.empty());
  EXPECT_EQ(registry.pending(), 1u);
  EXPECT_EQ(registry.poll(), 2u);
  EXPECT_EQ(calls, (std::vector<int>{1, 2}));
}

TEST_F(RegistryTest, SubscribeRequiresGrant) {
  const auto id = registry.connect(0x057e, 0x2007, "right", joystick_with_reports());
  EXPECT_EQ(error_of([&] { registry.subscribe_input_reports(id, [](auto&) {}); }), Errc::NotGranted);
}

TEST_F(RegistryTest, ClosedOrUndeclaredReportsAreDropped) {
  const auto id = registry.connect(0x057e, 0x2007, "right", joystick_with_reports());
  registry.request_device({}, pick_first);
  int calls = 0;
  registry.subscribe_input_reports(id, [&](const InputReportEvent&) { ++calls; });
  const Bytes body{0x10, 0x20};
  registry.inject_input_report(id, 1, body, 0);  // not open yet
  registry.poll();
  EXPECT_EQ(calls, 0);
  registry.open(id);
  registry.inject_input_report(id, 9, body, 0);  // undeclared
  registry.poll();
  EXPECT_EQ(calls, 0);
  registry.inject_input_report(id, 1, body, 0);
  registry.close(id);  // closed before dispatch
  registry.poll();
  EXPECT_EQ(calls, 0);
}

TEST_F(RegistryTest, ProtectedCollectionReportsAreFiltered) {
  const auto id =
      registry.connect(0x046d, 0xc33f, "composite", testing::fixture_descriptor("descriptors/keyboard_vendor.hex"));
  registry.request_device({}, pick_first);
  registry.open(id);
  std::vector<std::uint8_t> seen;
  registry.subscribe_input_reports(id, [&](const InputReportEvent& e) { seen.push_back(e.report_id); });
  const Bytes body(8, 0);
  registry.inject_input_report(id, 1, body, 0);
  registry.inject_input_report(id, 2, body, 0);
  registry.poll();
  EXPECT_EQ(seen, (std::vector<std::uint8_t>{2}));

  EXPECT_EQ(error_of([&] { registry.send_report(id, 1, Bytes{0x01}); }), Errc::ProtectedCollection);
  registry.send_report(id, 2, body);
  EXPECT_EQ(transport.outbound_log(id).size(), 1u);
}

TEST_F(RegistryTest, SendReportChecks) {
  const auto id = registry.connect(0x057e, 0x2007, "right", joystick_with_reports());
  registry.request_device({}, pick_first);
  EXPECT_EQ(error_of([&] { registry.send_report(id, 2, Bytes{0x01}); }), Errc::NotOpen);
  registry.open(id);
  EXPECT_EQ(error_of([&] { registry.send_report(id, 7, Bytes{0x01}); }), Errc::UnknownReport);
  transport.clock().advance_to(100);
  registry.send_report(id, 2, Bytes{0x01});
  const auto log = transport.outbound_log(id);
  ASSERT_EQ(log.size(), 1u);
  EXPECT_EQ(log[0], (OutboundRecord{100, 2, Bytes{0x01}}));
}

TEST_F(RegistryTest, DisconnectKeepsGrantsButDropsDevice) {
  const auto id = registry.connect(0x057e, 0x2007, "right", joystick_with_reports());
  registry.request_device({}, pick_first);
  registry.disconnect(id);
  EXPECT_TRUE(registry.get_devices().empty());
  EXPECT_TRUE(store.contains(id));
  registry.connect(0x057e, 0x2007, "right", joystick_with_reports());
  EXPECT_EQ(registry.get_devices().size(), 1u);
}

class PermissionFileTest : public ::testing::Test {
 protected:
  void SetUp() override {
    path = std::filesystem::temp_directory_path() /
           ("hidwire_perm_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name() + ".json");
    std::filesystem::remove(path);
  }
  void TearDown() override { std::filesystem::remove(path); }
  std::filesystem::path path;
};

TEST_F(PermissionFileTest, PersistsAcrossInstances) {
  {
    PermissionStore store(path);
    EXPECT_TRUE(store.grant("057e:2007:0"));
    EXPECT_FALSE(store.grant("057e:2007:0"));
  }
  PermissionStore reloaded(path);
  EXPECT_TRUE(reloaded.contains("057e:2007:0"));
  EXPECT_FALSE(reloaded.load_warning().has_value());
}

TEST_F(PermissionFileTest, CorruptFileLoadsEmptyWithWarning) {
  std::ofstream(path) << "{not json";
  PermissionStore store(path);
  EXPECT_EQ(store.size(), 0u);
  EXPECT_TRUE(store.load_warning().has_value());
  std::ofstream(path, std::ios::trunc) << R"(["a", 3])";
  PermissionStore mixed(path);
  EXPECT_EQ(mixed.size(), 0u);
  EXPECT_TRUE(mixed.load_warning().has_value());
}

}  // namespace
}  // namespace hidwire

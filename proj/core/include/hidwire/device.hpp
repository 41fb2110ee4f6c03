#pragma once

#include <cstdint>
#include <deque>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "hidwire/descriptor.hpp"
#include "hidwire/hex.hpp"

namespace hidwire {

/// "vvvv:pppp:n" with lowercase hex ids and a decimal ordinal that tells
/// identical devices apart in connection order.
using DeviceId = std::string;

std::string format_device_id(std::uint16_t vendor_id, std::uint16_t product_id, unsigned ordinal);

/// Every present field must match; absent fields are wildcards. usage_page and
/// usage are compared against each top-level collection of the device.
struct DeviceFilter {
  std::optional<std::uint16_t> vendor_id;
  std::optional<std::uint16_t> product_id;
  std::optional<std::uint16_t> usage_page;
  std::optional<std::uint16_t> usage;

  /// productId needs vendorId and usage needs usagePage.
  bool valid() const;
};

struct HidDevice {
  DeviceId id;
  std::uint16_t vendor_id = 0;
  std::uint16_t product_id = 0;
  std::string product_name;
  ReportDescriptor descriptor;
  bool opened = false;
};

bool matches_filter(const HidDevice& device, const DeviceFilter& filter);

/// Any-of semantics; an empty list matches every device.
bool matches_any(const HidDevice& device, std::span<const DeviceFilter> filters);

/// Built-in blocklist: Generic Desktop mouse (0x02), keyboard (0x06),
/// keypad (0x07), and the whole FIDO page 0xF1D0.
bool is_protected(std::uint16_t usage_page, std::uint16_t usage);
bool is_protected(const Collection& top_level);

/// True if every top-level collection is protected (or there are none).
bool fully_protected(const HidDevice& device);

struct InputReportEvent {
  const HidDevice& device;
  std::uint8_t report_id = 0;
  std::span<const std::uint8_t> data;  // body without the report-id byte
  std::int64_t t_ms = 0;
};

/// Granted device ids. Optionally backed by a JSON file holding a list of id
/// strings; a missing or corrupt file loads as empty.
class PermissionStore {
 public:
  PermissionStore() = default;
  explicit PermissionStore(std::filesystem::path path);

  bool contains(const DeviceId& id) const { return granted_.count(id) != 0; }
  std::size_t size() const { return granted_.size(); }
  const std::set<DeviceId>& granted() const { return granted_; }

  /// Returns false if already present. Persists when file-backed.
  bool grant(const DeviceId& id);
  void revoke(const DeviceId& id);

  /// Set when the last load found a corrupt file.
  const std::optional<std::string>& load_warning() const { return load_warning_; }

 private:
  void load();
  void save() const;

  std::optional<std::filesystem::path> path_;
  std::set<DeviceId> granted_;
  std::optional<std::string> load_warning_;
};

/// Where send_report delivers output reports. The simulated transport
/// implements this; a real OS transport would too.
class OutputSink {
 public:
  virtual ~OutputSink() = default;
  virtual void write_output(const DeviceId& device, std::uint8_t report_id, std::span<const std::uint8_t> data) = 0;
};

/// Picks at most one device out of the candidates; nullopt declines.
using Chooser = std::function<std::optional<std::size_t>(std::span<const HidDevice* const> candidates)>;
using InputReportListener = std::function<void(const InputReportEvent&)>;
using SubscriptionId = std::uint64_t;

/// Single-owner device registry. All calls must come from one dispatch
/// context. Injected reports are queued and delivered to listeners by
/// poll(), never from inside the injecting call.
class DeviceRegistry {
 public:
  DeviceRegistry(PermissionStore& store, OutputSink& sink) : store_(store), sink_(sink) {}

  DeviceRegistry(const DeviceRegistry&) = delete;
  DeviceRegistry& operator=(const DeviceRegistry&) = delete;

  const DeviceId& connect(std::uint16_t vendor_id, std::uint16_t product_id, std::string product_name,
                          ReportDescriptor descriptor);
  /// Closes the device, drops its subscriptions and pending events. Grants
  /// stay in the store.
  void disconnect(const DeviceId& id);
  bool connected(const DeviceId& id) const { return devices_.count(id) != 0; }
  const HidDevice& device(const DeviceId& id) const;
  std::vector<const HidDevice*> connected_devices() const;

  /// Candidates are connected devices matching any filter that have at
  /// least one unprotected top-level collection. Grants the chosen one.
  /// Throws InvalidFilter or NoDeviceChosen.
  const HidDevice& request_device(std::span<const DeviceFilter> filters, const Chooser& chooser);

  /// Connected, granted devices ordered by id.
  std::vector<const HidDevice*> get_devices() const;

  void open(const DeviceId& id);
  void close(const DeviceId& id);

  SubscriptionId subscribe_input_reports(const DeviceId& id, InputReportListener listener);
  void unsubscribe(SubscriptionId subscription);

  /// Device-side entry point: queue a report for delivery. Throws
  /// UnknownDevice.
  void inject_input_report(const DeviceId& id, std::uint8_t report_id, std::span<const std::uint8_t> data,
                           std::int64_t t_ms);

  /// Delivers queued reports in arrival order. A report is delivered only if
  /// its device is still connected and open and its report id belongs to an
  /// unprotected top-level collection. Returns the number of listener calls.
  std::size_t poll();
  std::size_t pending() const { return queue_.size(); }

  /// Throws NotOpen, UnknownReport or ProtectedCollection.
  void send_report(const DeviceId& id, std::uint8_t report_id, std::span<const std::uint8_t> data);

  const PermissionStore& permissions() const { return store_; }

 private:
  struct Pending {
    DeviceId device;
    std::uint8_t report_id;
    Bytes data;
    std::int64_t t_ms;
  };
  struct Subscription {
    DeviceId device;
    InputReportListener listener;
  };

  HidDevice& lookup(const DeviceId& id);
  bool report_allowed(const HidDevice& device, ReportKind kind, std::uint8_t report_id) const;

  PermissionStore& store_;
  OutputSink& sink_;
  std::map<DeviceId, HidDevice> devices_;
  std::map<std::pair<std::uint16_t, std::uint16_t>, unsigned> next_ordinal_;
  std::map<SubscriptionId, Subscription> subscriptions_;  // id order == registration order
  SubscriptionId next_subscription_ = 1;
  std::deque<Pending> queue_;
};

}  // namespace hidwire

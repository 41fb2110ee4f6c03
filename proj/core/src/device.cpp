#include "hidwire/device.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "hidwire/error.hpp"

namespace hidwire {

std::string format_device_id(std::uint16_t vendor_id, std::uint16_t product_id, unsigned ordinal) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04x:%04x:%u", vendor_id, product_id, ordinal);
  return buf;
}

bool DeviceFilter::valid() const {
  if (product_id && !vendor_id) return false;
  if (usage && !usage_page) return false;
  return true;
}

bool matches_filter(const HidDevice& device, const DeviceFilter& filter) {
  if (filter.vendor_id && *filter.vendor_id != device.vendor_id) return false;
  if (filter.product_id && *filter.product_id != device.product_id) return false;
  if (!filter.usage_page && !filter.usage) return true;
  const auto& tops = device.descriptor.collections;
  return std::any_of(tops.begin(), tops.end(), [&](const Collection& c) {
    return (!filter.usage_page || *filter.usage_page == c.usage.page) &&
           (!filter.usage || *filter.usage == c.usage.id);
  });
}

bool matches_any(const HidDevice& device, std::span<const DeviceFilter> filters) {
  if (filters.empty()) return true;
  return std::any_of(filters.begin(), filters.end(),
                     [&](const DeviceFilter& f) { return matches_filter(device, f); });
}

bool is_protected(std::uint16_t page, std::uint16_t usage) {
  if (page == usage_page::kFido) return true;
  if (page == usage_page::kGenericDesktop) {
    return usage == generic_desktop::kMouse || usage == generic_desktop::kKeyboard ||
           usage == generic_desktop::kKeypad;
  }
  return false;
}

bool is_protected(const Collection& top_level) { return is_protected(top_level.usage.page, top_level.usage.id); }

bool fully_protected(const HidDevice& device) {
  const auto& tops = device.descriptor.collections;
  return std::all_of(tops.begin(), tops.end(), [](const Collection& c) { return is_protected(c); });
}

// PermissionStore

PermissionStore::PermissionStore(std::filesystem::path path) : path_(std::move(path)) { load(); }

bool PermissionStore::grant(const DeviceId& id) {
  if (!granted_.insert(id).second) return false;
  save();
  return true;
}

void PermissionStore::revoke(const DeviceId& id) {
  if (granted_.erase(id) != 0) save();
}

void PermissionStore::load() {
  granted_.clear();
  load_warning_.reset();
  std::ifstream in(*path_);
  if (!in) return;
  std::stringstream text;
  text << in.rdbuf();
  const auto doc = nlohmann::json::parse(text.str(), nullptr, false);
  bool ok = doc.is_array();
  if (ok) {
    for (const auto& entry : doc) {
      if (!entry.is_string()) {
        ok = false;
        break;
      }
      granted_.insert(entry.get<std::string>());
    }
  }
  if (!ok) {
    granted_.clear();
    load_warning_ = "permission store " + path_->string() + " is corrupt; starting empty";
    std::cerr << "warning: " << *load_warning_ << '\n';
  }
}

void PermissionStore::save() const {
  if (!path_) return;
  std::ofstream out(*path_, std::ios::trunc);
  out << nlohmann::json(std::vector<std::string>(granted_.begin(), granted_.end())).dump() << '\n';
}

// DeviceRegistry

const DeviceId& DeviceRegistry::connect(std::uint16_t vendor_id, std::uint16_t product_id, std::string product_name,
                                        ReportDescriptor descriptor) {
  unsigned ordinal = 0;
  while (devices_.count(format_device_id(vendor_id, product_id, ordinal)) != 0) ++ordinal;
  HidDevice device;
  device.id = format_device_id(vendor_id, product_id, ordinal);
  device.vendor_id = vendor_id;
  device.product_id = product_id;
  device.product_name = std::move(product_name);
  device.descriptor = std::move(descriptor);
  auto [it, inserted] = devices_.emplace(device.id, std::move(device));
  return it->first;
}

void DeviceRegistry::disconnect(const DeviceId& id) {
  if (devices_.erase(id) == 0) throw Error(Errc::UnknownDevice, id);
  std::erase_if(subscriptions_, [&](const auto& entry) { return entry.second.device == id; });
  std::erase_if(queue_, [&](const Pending& p) { return p.device == id; });
}

const HidDevice& DeviceRegistry::device(const DeviceId& id) const {
  auto it = devices_.find(id);
  if (it == devices_.end()) throw Error(Errc::UnknownDevice, id);
  return it->second;
}

HidDevice& DeviceRegistry::lookup(const DeviceId& id) {
  auto it = devices_.find(id);
  if (it == devices_.end()) throw Error(Errc::UnknownDevice, id);
  return it->second;
}

std::vector<const HidDevice*> DeviceRegistry::connected_devices() const {
  std::vector<const HidDevice*> out;
  for (const auto& [id, device] : devices_) out.push_back(&device);
  return out;
}

const HidDevice& DeviceRegistry::request_device(std::span<const DeviceFilter> filters, const Chooser& chooser) {
  for (const auto& f : filters) {
    if (!f.valid()) throw Error(Errc::InvalidFilter, "productId requires vendorId and usage requires usagePage");
  }
  std::vector<const HidDevice*> candidates;
  for (const auto& [id, device] : devices_) {
    if (matches_any(device, filters) && !fully_protected(device)) candidates.push_back(&device);
  }
  if (candidates.empty()) throw Error(Errc::NoDeviceChosen, "no matching device");
  const auto choice = chooser(candidates);
  if (!choice || *choice >= candidates.size()) throw Error(Errc::NoDeviceChosen, "chooser declined");
  const HidDevice& chosen = *candidates[*choice];
  store_.grant(chosen.id);
  return chosen;
}

std::vector<const HidDevice*> DeviceRegistry::get_devices() const {
  std::vector<const HidDevice*> out;
  for (const auto& [id, device] : devices_) {
    if (store_.contains(id)) out.push_back(&device);
  }
  return out;
}

void DeviceRegistry::open(const DeviceId& id) {
  HidDevice& d = lookup(id);
  if (!store_.contains(id)) throw Error(Errc::NotGranted, id);
  if (d.opened) throw Error(Errc::AlreadyOpen, id);
  d.opened = true;
}

void DeviceRegistry::close(const DeviceId& id) {
  HidDevice& d = lookup(id);
  if (!d.opened) throw Error(Errc::NotOpen, id);
  d.opened = false;
}

SubscriptionId DeviceRegistry::subscribe_input_reports(const DeviceId& id, InputReportListener listener) {
  lookup(id);
  if (!store_.contains(id)) throw Error(Errc::NotGranted, id);
  const SubscriptionId sub = next_subscription_++;
  subscriptions_.emplace(sub, Subscription{id, std::move(listener)});
  return sub;
}

void DeviceRegistry::unsubscribe(SubscriptionId subscription) { subscriptions_.erase(subscription); }

void DeviceRegistry::inject_input_report(const DeviceId& id, std::uint8_t report_id,
                                         std::span<const std::uint8_t> data, std::int64_t t_ms) {
  lookup(id);
  queue_.push_back({id, report_id, Bytes(data.begin(), data.end()), t_ms});
}

bool DeviceRegistry::report_allowed(const HidDevice& device, ReportKind kind, std::uint8_t report_id) const {
  bool declared = false;
  for (const auto& top : device.descriptor.collections) {
    if (!collection_declares(top, kind, report_id)) continue;
    if (is_protected(top)) return false;
    declared = true;
  }
  return declared;
}

std::size_t DeviceRegistry::poll() {
  std::size_t calls = 0;
  while (!queue_.empty()) {
    Pending p = std::move(queue_.front());
    queue_.pop_front();
    auto dev = devices_.find(p.device);
    if (dev == devices_.end() || !dev->second.opened) continue;
    if (!report_allowed(dev->second, ReportKind::Input, p.report_id)) continue;

    std::vector<SubscriptionId> targets;
    for (const auto& [sub, s] : subscriptions_) {
      if (s.device == p.device) targets.push_back(sub);
    }
    for (SubscriptionId sub : targets) {
      // Earlier listeners may have unsubscribed, closed or disconnected.
      dev = devices_.find(p.device);
      if (dev == devices_.end() || !dev->second.opened) break;
      auto it = subscriptions_.find(sub);
      if (it == subscriptions_.end()) continue;
      InputReportEvent event{dev->second, p.report_id, p.data, p.t_ms};
      auto listener = it->second.listener;
      listener(event);
      ++calls;
    }
  }
  return calls;
}

void DeviceRegistry::send_report(const DeviceId& id, std::uint8_t report_id, std::span<const std::uint8_t> data) {
  const HidDevice& d = lookup(id);
  if (!d.opened) throw Error(Errc::NotOpen, id);
  if (!top_level_index_for_report(d.descriptor, ReportKind::Output, report_id)) {
    throw Error(Errc::UnknownReport, "output report " + std::to_string(report_id));
  }
  if (!report_allowed(d, ReportKind::Output, report_id)) {
    throw Error(Errc::ProtectedCollection, "output report " + std::to_string(report_id));
  }
  sink_.write_output(id, report_id, data);
}

}  // namespace hidwire

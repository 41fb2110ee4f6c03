#include "hidwire/transport.hpp"

#include <fstream>
#include <string>

#include <json.hpp>

#include "hidwire/error.hpp"

namespace hidwire {
namespace {

[[noreturn]] void parse_error(std::size_t line, const std::string& what) {
  throw Error(Errc::ParseError, "line " + std::to_string(line) + ": " + what);
}

ReplayRecord parse_record(const std::string& text, std::size_t line) {
  const auto doc = nlohmann::json::parse(text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) parse_error(line, "not a JSON object");
  if (doc.size() != 3 || !doc.contains("t_ms") || !doc.contains("reportId") || !doc.contains("data")) {
    parse_error(line, "expected exactly t_ms, reportId and data");
  }
  const auto& t = doc["t_ms"];
  const auto& id = doc["reportId"];
  const auto& data = doc["data"];
  if (!t.is_number_integer() || t.get<std::int64_t>() < 0) parse_error(line, "t_ms must be a non-negative integer");
  if (!id.is_number_integer() || id.get<std::int64_t>() < 0 || id.get<std::int64_t>() > 255) {
    parse_error(line, "reportId must be an integer in 0..255");
  }
  if (!data.is_string()) parse_error(line, "data must be a hex string");

  ReplayRecord r;
  r.t_ms = t.get<std::int64_t>();
  r.report_id = static_cast<std::uint8_t>(id.get<int>());
  try {
    r.data = parse_hex_string(data.get<std::string>());
  } catch (const Error& e) {
    parse_error(line, e.what());
  }
  if (r.data.empty()) parse_error(line, "data must not be empty");
  return r;
}

}  // namespace

void VirtualClock::advance_to(std::int64_t t_ms) {
  if (t_ms > now_ms_) now_ms_ = t_ms;
}

void VirtualClock::advance_by(std::int64_t delta_ms) {
  if (delta_ms > 0) now_ms_ += delta_ms;
}

std::vector<ReplayRecord> load_replay(std::istream& in) {
  std::vector<ReplayRecord> records;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (!text.empty() && text.back() == '\r') text.pop_back();
    if (text.find_first_not_of(" \t") == std::string::npos) continue;
    ReplayRecord r = parse_record(text, line);
    if (!records.empty() && r.t_ms < records.back().t_ms) {
      throw Error(Errc::NonMonotoneTimestamp, "line " + std::to_string(line));
    }
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<ReplayRecord> load_replay(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::ParseError, "cannot open " + path.string());
  return load_replay(in);
}

void write_replay_record(std::ostream& out, const ReplayRecord& record) {
  out << "{\"t_ms\":" << record.t_ms << ",\"reportId\":" << static_cast<int>(record.report_id) << ",\"data\":\""
      << to_hex(record.data) << "\"}\n";
}

void write_replay(std::ostream& out, std::span<const ReplayRecord> records) {
  for (const auto& r : records) write_replay_record(out, r);
}

void SimulatedTransport::write_output(const DeviceId& device, std::uint8_t report_id,
                                      std::span<const std::uint8_t> data) {
  outbound_[device].push_back({clock_.now_ms(), report_id, Bytes(data.begin(), data.end())});
}

void SimulatedTransport::inject(DeviceRegistry& registry, const DeviceId& device, std::uint8_t report_id,
                                std::span<const std::uint8_t> data) {
  if (!registry.connected(device)) throw Error(Errc::DeviceDetached, device);
  registry.inject_input_report(device, report_id, data, clock_.now_ms());
  registry.poll();
}

std::size_t SimulatedTransport::run_replay(DeviceRegistry& registry, const DeviceId& device,
                                           std::span<const ReplayRecord> records, std::optional<std::int64_t> until_ms) {
  if (!registry.connected(device)) throw Error(Errc::DeviceDetached, device);
  std::size_t injected = 0;
  for (const auto& r : records) {
    if (until_ms && r.t_ms > *until_ms) break;
    // A listener may disconnect the device mid-replay.
    if (!registry.connected(device)) throw Error(Errc::DeviceDetached, device);
    clock_.advance_to(r.t_ms);
    registry.inject_input_report(device, r.report_id, r.data, clock_.now_ms());
    registry.poll();
    ++injected;
  }
  return injected;
}

std::vector<OutboundRecord> SimulatedTransport::outbound_log(const DeviceId& device) const {
  auto it = outbound_.find(device);
  return it == outbound_.end() ? std::vector<OutboundRecord>{} : it->second;
}

}  // namespace hidwire

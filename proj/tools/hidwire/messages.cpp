#include "messages.hpp"

#include <cstdio>

namespace hidwire::cli {
namespace {

using nlohmann::ordered_json;

ordered_json vec3(const joycon::Vec3& v) { return ordered_json::array({v.x, v.y, v.z}); }

std::string_view kind_name(ReportKind kind) {
  switch (kind) {
    case ReportKind::Input: return "input";
    case ReportKind::Output: return "output";
    case ReportKind::Feature: return "feature";
  }
  return "?";
}

ordered_json field_to_json(const ReportFieldSpec& f) {
  ordered_json usages = ordered_json::array();
  for (const auto& u : f.usages) usages.push_back(ordered_json::array({u.page, u.id}));
  ordered_json j;
  j["kind"] = kind_name(f.kind);
  j["reportId"] = f.report_id;
  j["bitOffset"] = f.bit_offset;
  j["bitSize"] = f.bit_size;
  j["count"] = f.count;
  j["logicalMin"] = f.logical_min;
  j["logicalMax"] = f.logical_max;
  j["usages"] = std::move(usages);
  j["flags"] = {{"constant", f.flags.constant}, {"variable", f.flags.variable}, {"relative", f.flags.relative}};
  j["unit"] = f.unit;
  j["unitExponent"] = f.unit_exponent;
  return j;
}

ordered_json collection_to_json(const Collection& c) {
  ordered_json j;
  j["usagePage"] = c.usage.page;
  j["usage"] = c.usage.id;
  j["type"] = c.type;
  j["fields"] = ordered_json::array();
  for (const auto& f : c.fields) j["fields"].push_back(field_to_json(f));
  j["children"] = ordered_json::array();
  for (const auto& child : c.children) j["children"].push_back(collection_to_json(child));
  return j;
}

std::string fixed(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

struct JsonVisitor {
  std::string operator()(const ButtonMessage& m) const {
    ordered_json j;
    j["type"] = "button";
    j["button"] = joycon::button_name(m.event.button);
    j["t_ms"] = m.event.t_ms;
    return j.dump();
  }
  std::string operator()(const ImuMessage& m) const {
    ordered_json j;
    j["type"] = "imu";
    j["t_ms"] = m.frame.t_ms;
    j["accel"] = vec3(m.frame.accel);
    j["gyro"] = vec3(m.frame.gyro);
    return j.dump();
  }
  std::string operator()(const JumpMessage& m) const {
    ordered_json j;
    j["type"] = "jump";
    j["t_ms"] = m.event.t_ms;
    j["peak_g"] = m.event.peak_g;
    return j.dump();
  }
};

struct TextVisitor {
  std::string operator()(const ButtonMessage& m) const {
    return std::to_string(m.event.t_ms) + " button " + std::string(joycon::button_name(m.event.button));
  }
  std::string operator()(const ImuMessage& m) const {
    const auto& a = m.frame.accel;
    const auto& g = m.frame.gyro;
    return std::to_string(m.frame.t_ms) + " imu accel " + fixed(a.x) + " " + fixed(a.y) + " " + fixed(a.z) +
           " gyro " + fixed(g.x) + " " + fixed(g.y) + " " + fixed(g.z);
  }
  std::string operator()(const JumpMessage& m) const {
    return std::to_string(m.event.t_ms) + " jump peak_g " + fixed(m.event.peak_g);
  }
};

}  // namespace

std::string hello_message() {
  ordered_json j;
  j["type"] = "hello";
  j["version"] = kProtocolVersion;
  return j.dump();
}

std::string pong_message() { return R"({"type":"pong"})"; }

std::string to_json_line(const EventMessage& message) { return std::visit(JsonVisitor{}, message); }

std::string to_text_line(const EventMessage& message) { return std::visit(TextVisitor{}, message); }

nlohmann::ordered_json descriptor_to_json(const ReportDescriptor& desc) {
  ordered_json j;
  j["collections"] = ordered_json::array();
  for (const auto& c : desc.collections) j["collections"].push_back(collection_to_json(c));
  return j;
}

nlohmann::ordered_json decoded_fields_to_json(const std::vector<DecodedField>& fields) {
  ordered_json out = ordered_json::array();
  for (const auto& f : fields) {
    ordered_json j;
    j["usagePage"] = f.usage.page;
    j["usage"] = f.usage.id;
    j["value"] = f.value;
    j["raw"] = f.raw;
    j["outOfRange"] = f.out_of_range;
    if (f.array_slot) j["nullSlot"] = f.null_slot;
    out.push_back(std::move(j));
  }
  return out;
}

}  // namespace hidwire::cli

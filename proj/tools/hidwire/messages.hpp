#pragma once

#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "hidwire/codec.hpp"
#include "hidwire/descriptor.hpp"
#include "hidwire/joycon.hpp"
#include "hidwire/jump.hpp"

namespace hidwire::cli {

inline constexpr int kProtocolVersion = 1;

struct ButtonMessage {
  joycon::ButtonEvent event;
};
struct ImuMessage {
  joycon::ImuFrame frame;
};
struct JumpMessage {
  jump::JumpEvent event;
};
using EventMessage = std::variant<ButtonMessage, ImuMessage, JumpMessage>;

// Wire protocol, one compact JSON object per text frame / output line:
//   {"type":"hello","version":1}
//   {"type":"button","button":"A","t_ms":N}
//   {"type":"imu","t_ms":N,"accel":[x,y,z],"gyro":[x,y,z]}
//   {"type":"jump","t_ms":N,"peak_g":F}
//   {"type":"pong"}
std::string hello_message();
std::string pong_message();
std::string to_json_line(const EventMessage& message);
std::string to_text_line(const EventMessage& message);

nlohmann::ordered_json descriptor_to_json(const ReportDescriptor& desc);
nlohmann::ordered_json decoded_fields_to_json(const std::vector<DecodedField>& fields);

}  // namespace hidwire::cli

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include "hidwire/jump.hpp"

namespace hidwire::cli {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Minimal TOML: [section] headers, `key = value` with integer, float, bool or
// basic "string" values, and # comments. Enough for the service config.
using TomlValue = std::variant<std::int64_t, double, bool, std::string>;
using TomlDocument = std::map<std::string, std::map<std::string, TomlValue>>;

TomlDocument parse_toml(std::string_view text);

struct ServeOptions {
  std::uint16_t port = 9001;
  bool realtime = false;
  unsigned wait_clients = 1;  // replay starts once this many clients joined
};

struct ServiceConfig {
  jump::JumpConfig jump;
  ServeOptions serve;
};

/// Sections [jump] (t_high_g, t_low_g, debounce_ms) and [serve] (port,
/// realtime, wait_clients). Unknown sections or keys are errors.
ServiceConfig parse_config(std::string_view text);
ServiceConfig load_config(const std::filesystem::path& path);

}  // namespace hidwire::cli

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

#include "hidwire/joycon.hpp"

namespace hidwire::cli {

// Exit codes shared by all subcommands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitBadConfig = 2;

int cmd_dump_descriptor(const std::filesystem::path& path, std::ostream& out, std::ostream& err);

int cmd_decode(const std::filesystem::path& descriptor, const std::string& report_id, const std::string& data_hex,
               std::ostream& out, std::ostream& err);

struct ReplayArgs {
  std::filesystem::path log;
  std::optional<std::filesystem::path> config;
  bool json = false;
  joycon::Side side = joycon::Side::Right;
};

int cmd_replay(const ReplayArgs& args, std::ostream& out, std::ostream& err);

struct ServeArgs {
  std::optional<std::uint16_t> port;
  std::optional<std::filesystem::path> config;
  std::optional<std::filesystem::path> replay;
  bool stdin_sim = false;
  bool realtime = false;
  std::optional<unsigned> wait_clients;
};

int cmd_serve(const ServeArgs& args, std::ostream& err);

/// Parses "63", "0x3f" or "0X3F" into a report id; throws std::invalid_argument.
std::uint8_t parse_report_id(const std::string& text);

}  // namespace hidwire::cli

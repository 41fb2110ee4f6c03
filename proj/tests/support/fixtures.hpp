#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>

#include "hidwire/descriptor.hpp"
#include "hidwire/hex.hpp"

namespace hidwire::testing {

inline std::filesystem::path fixture(std::string_view name) {
  return std::filesystem::path(HIDWIRE_FIXTURE_DIR) / name;
}

inline std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

inline ReportDescriptor fixture_descriptor(std::string_view name) {
  return parse_descriptor(parse_hex_text(read_text(fixture(name))));
}

// FNV-1a, 64 bit.
inline std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace hidwire::testing

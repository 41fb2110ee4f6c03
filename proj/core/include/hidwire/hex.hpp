#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hidwire {

using Bytes = std::vector<std::uint8_t>;

// Lowercase, no separators: {0x01, 0xab} -> "01ab".
std::string to_hex(std::span<const std::uint8_t> bytes);

// Strict form used by replay logs: even length, lowercase hex digits only.
// Throws Error(ParseError).
Bytes parse_hex_string(std::string_view text);

// Loose form used by descriptor text files and the CLI: tokens separated by
// whitespace or commas, each one or two hex digits with an optional 0x
// prefix. A run of digits without separators ("0501") is read pairwise.
// '#' starts a comment that runs to end of line.
Bytes parse_hex_text(std::string_view text);

}  // namespace hidwire

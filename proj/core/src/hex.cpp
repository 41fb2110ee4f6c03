#include "hidwire/hex.hpp"

#include <cctype>

#include "hidwire/error.hpp"

namespace hidwire {
namespace {

int nibble(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

void append_digits(std::string_view digits, Bytes& out) {
  if (digits.size() % 2 != 0) {
    if (digits.size() != 1) {
      throw Error(Errc::ParseError, "odd number of hex digits in '" + std::string(digits) + "'");
    }
    out.push_back(static_cast<std::uint8_t>(nibble(digits[0])));
    return;
  }
  for (std::size_t i = 0; i < digits.size(); i += 2) {
    out.push_back(static_cast<std::uint8_t>(nibble(digits[i]) << 4 | nibble(digits[i + 1])));
  }
}

}  // namespace

std::string to_hex(std::span<const std::uint8_t> bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (auto b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0x0f]);
  }
  return out;
}

Bytes parse_hex_string(std::string_view text) {
  if (text.size() % 2 != 0) throw Error(Errc::ParseError, "hex string has odd length");
  for (char c : text) {
    if (!((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f'))) {
      throw Error(Errc::ParseError, std::string("invalid hex character '") + c + "'");
    }
  }
  Bytes out;
  append_digits(text, out);
  return out;
}

Bytes parse_hex_text(std::string_view text) {
  Bytes out;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) && text[i] != ',' &&
           text[i] != '#') {
      ++i;
    }
    std::string_view token = text.substr(start, i - start);
    if (token.size() > 2 && token[0] == '0' && (token[1] == 'x' || token[1] == 'X')) {
      token.remove_prefix(2);
    }
    for (char d : token) {
      if (nibble(d) < 0) throw Error(Errc::ParseError, "invalid hex token '" + std::string(token) + "'");
    }
    append_digits(token, out);
  }
  return out;
}

}  // namespace hidwire

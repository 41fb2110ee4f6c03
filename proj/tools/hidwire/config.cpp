#include "config.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "hidwire/error.hpp"

namespace hidwire::cli {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw ConfigError("config line " + std::to_string(line) + ": " + what);
}

// Drops a trailing comment that is not inside a string.
std::string_view strip_comment(std::string_view s) {
  bool in_string = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '"' && (i == 0 || s[i - 1] != '\\')) in_string = !in_string;
    if (s[i] == '#' && !in_string) return s.substr(0, i);
  }
  return s;
}

bool valid_key(std::string_view key) {
  if (key.empty()) return false;
  for (char c : key) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-') return false;
  }
  return true;
}

TomlValue parse_value(std::string_view v, std::size_t line) {
  if (v.empty()) fail(line, "missing value");
  if (v == "true") return true;
  if (v == "false") return false;
  if (v.front() == '"') {
    if (v.size() < 2 || v.back() != '"') fail(line, "unterminated string");
    std::string out;
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
      if (v[i] == '\\' && i + 2 < v.size()) {
        ++i;
        switch (v[i]) {
          case 'n': out.push_back('\n'); break;
          case 't': out.push_back('\t'); break;
          default: out.push_back(v[i]); break;
        }
      } else {
        out.push_back(v[i]);
      }
    }
    return out;
  }
  std::string digits;
  for (char c : v) {
    if (c != '_') digits.push_back(c);
  }
  const bool is_float = digits.find_first_of(".eE") != std::string::npos;
  if (is_float) {
    std::istringstream in(digits);
    in.imbue(std::locale::classic());
    double d = 0;
    in >> d;
    if (!in || !in.eof()) fail(line, "invalid number '" + std::string(v) + "'");
    return d;
  }
  std::int64_t i = 0;
  const char* first = digits.data();
  const char* last = digits.data() + digits.size();
  if (!digits.empty() && digits.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, i);
  if (ec != std::errc() || ptr != last) fail(line, "invalid value '" + std::string(v) + "'");
  return i;
}

double as_number(const TomlValue& v, const std::string& key) {
  if (const auto* d = std::get_if<double>(&v)) return *d;
  if (const auto* i = std::get_if<std::int64_t>(&v)) return static_cast<double>(*i);
  throw ConfigError(key + " must be a number");
}

std::int64_t as_integer(const TomlValue& v, const std::string& key) {
  if (const auto* i = std::get_if<std::int64_t>(&v)) return *i;
  throw ConfigError(key + " must be an integer");
}

bool as_bool(const TomlValue& v, const std::string& key) {
  if (const auto* b = std::get_if<bool>(&v)) return *b;
  throw ConfigError(key + " must be true or false");
}

}  // namespace

TomlDocument parse_toml(std::string_view text) {
  TomlDocument doc;
  std::string section;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = trim(strip_comment(text.substr(pos, end - pos)));
    pos = end + 1;
    ++line_no;
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail(line_no, "malformed section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (!valid_key(section)) fail(line_no, "invalid section name");
      if (doc.count(section) != 0) fail(line_no, "duplicate section [" + section + "]");
      doc[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) fail(line_no, "expected key = value");
    const std::string key(trim(line.substr(0, eq)));
    if (!valid_key(key)) fail(line_no, "invalid key '" + key + "'");
    auto& table = doc[section];
    if (table.count(key) != 0) fail(line_no, "duplicate key '" + key + "'");
    table.emplace(key, parse_value(trim(line.substr(eq + 1)), line_no));
  }
  return doc;
}

ServiceConfig parse_config(std::string_view text) {
  ServiceConfig config;
  for (const auto& [section, table] : parse_toml(text)) {
    for (const auto& [key, value] : table) {
      const std::string name = section.empty() ? key : section + "." + key;
      if (section == "jump" && key == "t_high_g") {
        config.jump.t_high_g = as_number(value, name);
      } else if (section == "jump" && key == "t_low_g") {
        config.jump.t_low_g = as_number(value, name);
      } else if (section == "jump" && key == "debounce_ms") {
        config.jump.debounce_ms = as_integer(value, name);
      } else if (section == "serve" && key == "port") {
        const auto port = as_integer(value, name);
        if (port < 0 || port > 65535) throw ConfigError(name + " must be in 0..65535");
        config.serve.port = static_cast<std::uint16_t>(port);
      } else if (section == "serve" && key == "realtime") {
        config.serve.realtime = as_bool(value, name);
      } else if (section == "serve" && key == "wait_clients") {
        const auto n = as_integer(value, name);
        if (n < 0) throw ConfigError(name + " must be >= 0");
        config.serve.wait_clients = static_cast<unsigned>(n);
      } else {
        throw ConfigError("unknown config key '" + name + "'");
      }
    }
  }
  try {
    config.jump.validate();
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  return config;
}

ServiceConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  std::stringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

}  // namespace hidwire::cli

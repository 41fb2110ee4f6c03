#include <gtest/gtest.h>

#include "config.hpp"
#include "fixtures.hpp"

namespace hidwire::cli {
namespace {

TEST(ParseTomlTest, ScalarsSectionsAndComments) {
  const auto doc = parse_toml(
      "# top\n[jump]\nt_high_g = 2.0 # inline\ndebounce_ms = 300\n\n[serve]\nrealtime = true\nname = \"a # b\"\n");
  EXPECT_EQ(std::get<double>(doc.at("jump").at("t_high_g")), 2.0);
  EXPECT_EQ(std::get<std::int64_t>(doc.at("jump").at("debounce_ms")), 300);
  EXPECT_EQ(std::get<bool>(doc.at("serve").at("realtime")), true);
  EXPECT_EQ(std::get<std::string>(doc.at("serve").at("name")), "a # b");
}

TEST(ParseTomlTest, Errors) {
  EXPECT_THROW(parse_toml("[jump\n"), ConfigError);
  EXPECT_THROW(parse_toml("[jump]\nx = 1\nx = 2\n"), ConfigError);
  EXPECT_THROW(parse_toml("[jump]\nx = \n"), ConfigError);
  EXPECT_THROW(parse_toml("[jump]\nx = nope\n"), ConfigError);
  EXPECT_THROW(parse_toml("[jump]\njust a line\n"), ConfigError);
}

TEST(ParseConfigTest, DefaultsAndOverrides) {
  const auto defaults = parse_config("");
  EXPECT_EQ(defaults.jump.t_high_g, 1.8);
  EXPECT_EQ(defaults.serve.port, 9001);
  const auto c = parse_config("[jump]\nt_high_g = 2\nt_low_g = 1.1\ndebounce_ms = 100\n[serve]\nport = 9100\nwait_clients = 3\n");
  EXPECT_EQ(c.jump.t_high_g, 2.0);
  EXPECT_EQ(c.jump.t_low_g, 1.1);
  EXPECT_EQ(c.jump.debounce_ms, 100);
  EXPECT_EQ(c.serve.port, 9100);
  EXPECT_EQ(c.serve.wait_clients, 3u);
}

TEST(ParseConfigTest, UnknownKeysAndBadValuesAreErrors) {
  EXPECT_THROW(parse_config("[jump]\nt_hihg_g = 2.0\n"), ConfigError);
  EXPECT_THROW(parse_config("[audio]\nx = 1\n"), ConfigError);
  EXPECT_THROW(parse_config("[jump]\nt_high_g = 1.0\nt_low_g = 1.5\n"), ConfigError);
  EXPECT_THROW(parse_config("[serve]\nport = 70000\n"), ConfigError);
  EXPECT_THROW(parse_config("[serve]\nrealtime = 1\n"), ConfigError);
  EXPECT_THROW(parse_config("[jump]\ndebounce_ms = 2.5\n"), ConfigError);
}

TEST(LoadConfigTest, BundledExample) {
  EXPECT_NO_THROW(load_config(testing::fixture("hidwire.toml")));
  EXPECT_THROW(load_config(testing::fixture("missing.toml")), ConfigError);
}

}  // namespace
}  // namespace hidwire::cli

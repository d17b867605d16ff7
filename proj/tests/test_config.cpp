#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>

#include "cnoma/config.hpp"

using namespace cnoma;

TEST_CASE("key = value lines with comments and blank space") {
  const KeyValueConfig cfg = KeyValueConfig::parse_text(
      "# leading comment\n"
      "alpha = 1.5\n"
      "\n"
      "  name =  hello world  \n"
      "flag = true  # trailing comment\n"
      "count=7\n",
      "inline");
  CHECK(cfg.get_double("alpha") == doctest::Approx(1.5));
  CHECK(cfg.get_string("name") == "hello world");
  CHECK(cfg.get_bool("flag"));
  CHECK(cfg.get_u64("count") == 7);
}

TEST_CASE("parse errors carry the origin and line number") {
  try {
    KeyValueConfig::parse_text("a = 1\nbogus line\n", "somewhere");
    FAIL("expected a parse error");
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("somewhere:2") != std::string::npos);
  }
}

TEST_CASE("duplicate keys are rejected") {
  CHECK_THROWS_AS(
      KeyValueConfig::parse_text("a = 1\na = 2\n", "dup"), ConfigError);
}

TEST_CASE("typed getters reject malformed values") {
  const KeyValueConfig cfg = KeyValueConfig::parse_text(
      "num = 1.5x\nint = -3\nbool = maybe\n", "bad");
  CHECK_THROWS_AS(cfg.get_double("num"), ConfigError);
  CHECK_THROWS_AS(cfg.get_u64("int"), ConfigError);
  CHECK_THROWS_AS(cfg.get_bool("bool"), ConfigError);
  CHECK_THROWS_AS(cfg.get_double("missing"), ConfigError);
}

TEST_CASE("boolean spellings") {
  const KeyValueConfig cfg = KeyValueConfig::parse_text(
      "a = yes\nb = off\nc = 1\nd = False\n", "bools");
  CHECK(cfg.get_bool("a"));
  CHECK_FALSE(cfg.get_bool("b"));
  CHECK(cfg.get_bool("c"));
  CHECK_FALSE(cfg.get_bool("d"));
}

TEST_CASE("lists split on commas and reject emptiness") {
  const KeyValueConfig cfg = KeyValueConfig::parse_text(
      "grid = 0, 5, 10.5\nnames = x, y\nhole = 1, , 2\nbad = 1, z\n"
      "blank =\n",
      "lists");
  const auto grid = cfg.get_double_list("grid");
  REQUIRE(grid.size() == 3);
  CHECK(grid[2] == doctest::Approx(10.5));
  CHECK(cfg.get_string_list("names") == std::vector<std::string>{"x", "y"});
  CHECK(cfg.get_double_list("hole").size() == 2);  // stray commas tolerated
  CHECK_THROWS_AS(cfg.get_double_list("bad"), ConfigError);
  CHECK_THROWS_AS(cfg.get_string_list("blank"), ConfigError);
}

TEST_CASE("maybe getters return nullopt for absent keys") {
  const KeyValueConfig cfg = KeyValueConfig::parse_text("a = 2\n", "maybe");
  CHECK(cfg.maybe_double("a").value() == doctest::Approx(2.0));
  CHECK_FALSE(cfg.maybe_double("b").has_value());
  CHECK_FALSE(cfg.maybe_string("b").has_value());
  CHECK_FALSE(cfg.maybe_bool("b").has_value());
  CHECK_FALSE(cfg.maybe_u64("b").has_value());
}

TEST_CASE("unknown keys are the unconsumed ones") {
  const KeyValueConfig cfg = KeyValueConfig::parse_text(
      "a = 1\nb = 2\nc = 3\n", "track");
  (void)cfg.get_double("a");
  (void)cfg.maybe_double("c");
  const auto unknown = cfg.unknown_keys();
  REQUIRE(unknown.size() == 1);
  CHECK(unknown[0] == "b");
}

TEST_CASE("set overrides and counts as consumed on read") {
  KeyValueConfig cfg = KeyValueConfig::parse_text("a = 1\n", "set");
  cfg.set("a", "9");
  cfg.set("fresh", "3.5");
  CHECK(cfg.get_double("a") == doctest::Approx(9.0));
  CHECK(cfg.get_double("fresh") == doctest::Approx(3.5));
  CHECK(cfg.unknown_keys().empty());
}

TEST_CASE("missing files fail with the path in the message") {
  try {
    KeyValueConfig::parse_file("/nonexistent/nope.cfg");
    FAIL("expected an error");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("/nonexistent/nope.cfg") !=
          std::string::npos);
  }
}

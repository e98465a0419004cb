#include <doctest.h>

#include <string>
#include <vector>

#include "npc/config.hpp"

using npc::ConfigError;
using npc::ConfigFile;

TEST_CASE("sections, scalars, and flattened keys")
{
    const ConfigFile cfg = ConfigFile::parse_text(
        "top = 1.5\n"
        "label = plain_token\n"
        "[alpha]\n"
        "x = 2  # trailing comment\n"
        "name = \"quoted # not a comment\"\n"
        "flag = true\n"
        "[alpha.inner]\n"
        "y = -3e-2\n",
        "mem");
    CHECK(cfg.get_number("top") == 1.5);
    CHECK(cfg.get_string("label") == "plain_token");
    CHECK(cfg.get_number("alpha.x") == 2.0);
    CHECK(cfg.get_string("alpha.name") == "quoted # not a comment");
    CHECK(cfg.get_bool_or("alpha.flag", false) == true);
    CHECK(cfg.get_number("alpha.inner.y") == doctest::Approx(-0.03));
    CHECK(cfg.has("alpha.x"));
    CHECK_FALSE(cfg.has("alpha.z"));
    CHECK(cfg.origin() == "mem");
    CHECK(cfg.line_of("alpha.x") == 4);
}

TEST_CASE("arrays and nested arrays")
{
    const ConfigFile cfg = ConfigFile::parse_text(
        "a = [1, 2, 3.5]\n"
        "pairs = [[1, 1], [2, -1]]\n"
        "single = 7\n",
        "mem");
    CHECK(cfg.get_array("a") == std::vector<double>{1.0, 2.0, 3.5});
    const auto pairs = cfg.get_nested_array("pairs");
    REQUIRE(pairs.size() == 2);
    CHECK(pairs[1] == std::vector<double>{2.0, -1.0});
    // scalar and flat-array promotion
    CHECK(cfg.get_array("single") == std::vector<double>{7.0});
    CHECK(cfg.get_nested_array("a") == std::vector<std::vector<double>>{{1.0, 2.0, 3.5}});
}

TEST_CASE("multi-line arrays continue until brackets balance")
{
    const ConfigFile cfg = ConfigFile::parse_text(
        "[q]\n"
        "rows = [\n"
        "    [1.0, 2.0],  # first\n"
        "    [3.0, 4.0]\n"
        "]\n"
        "after = 9\n",
        "mem");
    const auto rows = cfg.get_nested_array("q.rows");
    REQUIRE(rows.size() == 2);
    CHECK(rows[0] == std::vector<double>{1.0, 2.0});
    CHECK(rows[1] == std::vector<double>{3.0, 4.0});
    CHECK(cfg.get_number("q.after") == 9.0);
    CHECK(cfg.line_of("q.rows") == 2);

    CHECK_THROWS_AS(ConfigFile::parse_text("v = [1,\n  2,\n", "mem"), ConfigError);
}

TEST_CASE("parse errors carry origin and line")
{
    CHECK_THROWS_WITH_AS(ConfigFile::parse_text("x 3\n", "f.cfg"),
                         doctest::Contains("f.cfg:1"), ConfigError);
    CHECK_THROWS_WITH_AS(ConfigFile::parse_text("ok = 1\n[bad\n", "f.cfg"),
                         doctest::Contains("f.cfg:2"), ConfigError);
    CHECK_THROWS_WITH_AS(ConfigFile::parse_text("k = 1\nk = 2\n", "f.cfg"),
                         doctest::Contains("duplicate"), ConfigError);
    CHECK_THROWS_AS(ConfigFile::parse_text("k =\n", "f.cfg"), ConfigError);
    CHECK_THROWS_AS(ConfigFile::parse_text("[]\n", "f.cfg"), ConfigError);
    CHECK_THROWS_AS(ConfigFile::parse_text("a = [1, x]\n", "f.cfg"), ConfigError);
}

TEST_CASE("typed access mismatches point at the key")
{
    const ConfigFile cfg = ConfigFile::parse_text("[s]\nv = \"text\"\n", "f.cfg");
    CHECK_THROWS_WITH_AS(cfg.get_number("s.v"), doctest::Contains("s.v"), ConfigError);
    CHECK_THROWS_WITH_AS(cfg.get_number("s.missing"), doctest::Contains("s.missing"),
                         ConfigError);
    CHECK_THROWS_AS(cfg.get_array("s.v"), ConfigError);
    CHECK(cfg.get_number_or("s.missing", 4.0) == 4.0);
    CHECK(cfg.get_string_or("s.missing", "d") == "d");
    CHECK(cfg.get_bool_or("s.missing", true) == true);
}

TEST_CASE("overrides use the normal value grammar")
{
    ConfigFile cfg = ConfigFile::parse_text("[p]\nt = 61.0\n", "f.cfg");
    cfg.apply_override("p.t=63.5");
    CHECK(cfg.get_number("p.t") == 63.5);
    cfg.apply_override("p.fresh=[1, 2]");
    CHECK(cfg.get_array("p.fresh") == std::vector<double>{1.0, 2.0});
    cfg.apply_override("p.name=\"abc\"");
    CHECK(cfg.get_string("p.name") == "abc");
    CHECK_THROWS_AS(cfg.apply_override("no_equals"), ConfigError);
    CHECK_THROWS_AS(cfg.apply_override("=5"), ConfigError);
}

TEST_CASE("keys_with_prefix preserves file order")
{
    const ConfigFile cfg = ConfigFile::parse_text(
        "[c]\nb2 = 1\na1 = 2\n[d]\nz = 3\n", "f.cfg");
    const std::vector<std::string> keys = cfg.keys_with_prefix("c.");
    REQUIRE(keys.size() == 2);
    CHECK(keys[0] == "c.b2");
    CHECK(keys[1] == "c.a1");
}

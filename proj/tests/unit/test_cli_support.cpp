#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "cache.hpp"
#include "run_config.hpp"

using namespace wk::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("wkcech_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("sha256 matches the standard test vectors") {
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST_CASE("report cache round trip") {
  const report_cache cache(scratch("cache"));
  CHECK_FALSE(cache.load("k").has_value());
  nlohmann::ordered_json j;
  j["b"] = 1;
  j["a"] = "x";
  cache.store("k", j);
  const auto back = cache.load("k");
  REQUIRE(back.has_value());
  CHECK(back->dump() == j.dump());
  CHECK(back->begin().key() == "b");
}

TEST_CASE("config files merge and validate") {
  const auto dir = scratch("config");
  {
    std::ofstream out(dir / "a.conf");
    out << "u_deg = 3\nz_min = -6\nformat = json\ngrowth_cap = 2\n";
  }
  run_config cfg;
  cfg.merge_file(dir / "a.conf");
  CHECK(cfg.window.u_deg_max == 3);
  CHECK(cfg.window.z_min == -6);
  CHECK(cfg.window.z_max == 12);
  CHECK(cfg.growth_cap == 2);
  CHECK(cfg.format == output_format::json);
  CHECK_NOTHROW(cfg.validate());

  run_config other = cfg;
  other.format = output_format::text;
  other.cache_dir = dir;
  CHECK(other.cache_text() == cfg.cache_text());
  other.window.u_deg_max = 4;
  CHECK(other.cache_text() != cfg.cache_text());

  {
    std::ofstream out(dir / "b.conf");
    out << "colour = red\n";
  }
  CHECK_THROWS_AS(run_config{}.merge_file(dir / "b.conf"), wk::parse_error);
  run_config bad;
  bad.window.u_deg_max = -1;
  CHECK_THROWS_AS(bad.validate(), wk::parse_error);
}

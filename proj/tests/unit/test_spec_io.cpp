#include <doctest.h>

#include "wk/spec_io.hpp"

using namespace wk;

namespace {

const truncation_policy w6 = truncation_policy::wide(6);

}  // namespace

TEST_CASE("key-value documents") {
  const auto doc = kv_document::parse("# comment\nk1 = 2\n\nk2=0\nk1 = 3\nperturb.v1 = z u2\n");
  CHECK(doc.get("k1") == "3");
  CHECK(doc.get_all("k1").size() == 2);
  CHECK(doc.get_int("k2", 7) == 0);
  CHECK(doc.get_int("missing", 7) == 7);
  CHECK(doc.has("perturb.v1"));
  CHECK_FALSE(doc.has("perturb.v2"));
  CHECK_THROWS_AS(doc.require_known({"k1", "k2"}), parse_error);
  CHECK_THROWS_AS(kv_document::parse("k1 2\n"), parse_error);
}

TEST_CASE("threefold specs round trip") {
  const auto s = parse_threefold_spec("k1 = 2\nk2 = 0\nperturb.v1 = z u2^4\n", w6);
  CHECK(s.k1 == 2);
  CHECK(s.k2 == 0);
  REQUIRE(s.perturbations.size() == 1);
  CHECK(s.perturbations[0].where == slot::v1);
  const auto again = parse_threefold_spec(render_threefold_spec(s), w6);
  CHECK(again.k1 == s.k1);
  CHECK(again.slot_perturbation(slot::v1, w6) == s.slot_perturbation(slot::v1, w6));
  CHECK_THROWS_AS(parse_threefold_spec("k1 = x\n", w6), parse_error);
}

TEST_CASE("cocycles and maps") {
  const auto c = read_cocycle(kv_document::parse("cocycle.2 = z^-1 u2\n"), w6);
  REQUIRE(c.size() == 3);
  CHECK(c[0].is_zero());
  CHECK(c[1] == parse_series("z^-1 u2", chart::u, w6));
  const auto m = read_map_spec(kv_document::parse("map.u.1 = z\nmap.u.2 = z u1^2\nmap.u.3 = u2\n"
                                                   "map.v.1 = xi\nmap.v.2 = v1^2\nmap.v.3 = xi v2\n"),
                               w6);
  CHECK(m.on_v[2] == parse_series("xi v2", chart::v, w6));
  CHECK_THROWS_AS(read_map_spec(kv_document::parse("map.u.1 = z\n"), w6), parse_error);
}

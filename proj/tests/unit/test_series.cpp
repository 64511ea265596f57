#include <doctest.h>

#include "wk/series.hpp"

using namespace wk;

namespace {

const truncation_policy w6 = truncation_policy::wide(6);

multi_series u(std::string_view s, truncation_policy p = w6) { return parse_series(s, chart::u, p); }

}  // namespace

TEST_CASE("rationals render in lowest terms") {
  rational x(6, -4);
  x.canonicalize();
  CHECK(render_rational(x) == "-3/2");
  CHECK(parse_rational("-6/4") == x);
  CHECK(render_rational(rational(5)) == "5");
}

TEST_CASE("parse and render round trip") {
  for (const char* text : {"0", "1", "z^2 u1 - 1/2 z^-1 u2^3", "u1 u2 + 3 z^-4", "xi v1 - v2"}) {
    const chart c = std::string_view(text).find('v') != std::string_view::npos ? chart::v : chart::u;
    const auto s = parse_series(text, c, w6);
    CHECK(parse_series(s.render(), c, w6) == s);
  }
  CHECK(u("0").is_zero());
  CHECK_THROWS_AS(u("z^ u1"), parse_error);
  CHECK_THROWS_AS(u("u1^-1"), parse_error);
}

TEST_CASE("ring operations") {
  const auto a = u("z + u1");
  const auto b = u("z - u1");
  CHECK(a * b == u("z^2 - u1^2"));
  CHECK(a + b == u("2 z"));
  CHECK(a - a == u("0"));
  CHECK(a.pow(2) == u("z^2 + 2 z u1 + u1^2"));
  CHECK(u("z^3").pow(-1) == u("z^-3"));
  CHECK(u("z u2").shifted_z(-2) == u("z^-1 u2"));
}

TEST_CASE("u-degree truncation drops and flags") {
  const truncation_policy w2 = truncation_policy::wide(2);
  const auto x = u("u1 + u2", w2);
  const auto cube = x.pow(3);
  CHECK(cube.is_zero());
  CHECK(cube.touched_boundary());
  CHECK_FALSE(x.pow(2).touched_boundary());
  CHECK(x.pow(2).u_degree_part(2) == u("u1^2 + 2 u1 u2 + u2^2", w2));
}

TEST_CASE("unit inversion is a geometric series") {
  const truncation_policy w3 = truncation_policy::wide(3);
  const auto a = u("2 z^2 + z^3 u1", w3);
  const auto inv = invert_unit(a);
  REQUIRE(inv.has_value());
  CHECK(a * *inv == u("1", w3));
  CHECK_FALSE(invert_unit(u("u1", w3)).has_value());
  CHECK_FALSE(invert_unit(u("1 + z", w3)).has_value());
}

TEST_CASE("substitution into the other chart") {
  substitution_rule r;
  r.target = chart::v;
  r.z = parse_series("xi^-1", chart::v, w6);
  r.u1 = parse_series("xi^2 v1 - xi v2", chart::v, w6);
  r.u2 = parse_series("v2", chart::v, w6);
  // v1 = z^2 u1 + z u2 inverts to the rule above.
  CHECK(substitute(u("z^2 u1 + z u2"), r) == parse_series("v1", chart::v, w6));
  CHECK(substitute(u("z^3"), r) == parse_series("xi^-3", chart::v, w6));
}

TEST_CASE("derivatives and holomorphic parts") {
  const auto f = u("z^3 u1^2 + z^-2 u2 + 5");
  CHECK(partial_derivative(f, variable::z) == u("3 z^2 u1^2 - 2 z^-3 u2"));
  CHECK(partial_derivative(f, variable::u1) == u("2 z^3 u1"));
  CHECK_FALSE(is_holomorphic(f));
  const auto [hol, principal] = holomorphic_split(f);
  CHECK(hol == u("z^3 u1^2 + 5"));
  CHECK(principal == u("z^-2 u2"));
  CHECK(is_holomorphic(hol));
}

TEST_CASE("exponent order groups by u-degree") {
  CHECK(exponent{5, 0, 0} < exponent{-5, 0, 1});
  CHECK(exponent{0, 0, 2} < exponent{0, 1, 1});
  CHECK(exponent{-1, 1, 0} < exponent{0, 1, 0});
}

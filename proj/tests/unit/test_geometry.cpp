#include <doctest.h>

#include "wk/geometry.hpp"

using namespace wk;

namespace {

const truncation_policy w6 = truncation_policy::wide(6);

multi_series u(std::string_view s) { return parse_series(s, chart::u, w6); }
multi_series v(std::string_view s) { return parse_series(s, chart::v, w6); }

series_matrix u_matrix(std::initializer_list<const char*> entries) {
  series_matrix m;
  for (const char* e : entries) m.push_back(u(e));
  return m;
}

}  // namespace

TEST_CASE("jacobian of W2 deformed by z u2^y") {
  for (int y = 1; y <= 4; ++y) {
    const auto b = tangent_jacobian(threefold_spec::w2_y(y), w6);
    const std::string u2y = y == 1 ? "u2" : "u2^" + std::to_string(y);
    std::string d13 = "0";
    if (y == 1) d13 = "z";
    else if (y == 2) d13 = "2 z u2";
    else d13 = std::to_string(y) + " z u2^" + std::to_string(y - 1);
    const series_matrix expect{u("-1 z^-2"), u("0"), u("0"), u("2 z u1 + " + u2y), u("z^2"), u(d13),
                               u("0"),       u("0"), u("1")};
    CAPTURE(y);
    CHECK(b.matrix() == expect);
  }
}

TEST_CASE("jacobian of W3") {
  const auto b = tangent_jacobian(threefold_spec::w(3), w6);
  CHECK(b.matrix() == u_matrix({"-1 z^-2", "0", "0", "3 z^2 u1", "z^3", "0", "-1 z^-2 u2", "0", "z^-1"}));
}

TEST_CASE("transition and its inverse compose to the identity") {
  for (const auto& spec : {threefold_spec::w(1), threefold_spec::w(3), threefold_spec::w2_y(1), threefold_spec::w2_y(3)}) {
    const auto t = build_transition(spec, w6);
    REQUIRE(t.invertible());
    const auto& inv = t.inverse_rule();
    CHECK(substitute(*t.forward.z, inv) == v("xi"));
    CHECK(substitute(*t.forward.u1, inv) == v("v1"));
    CHECK(substitute(*t.forward.u2, inv) == v("v2"));
  }
  const auto t = build_transition(threefold_spec::w2_y(1), w6);
  CHECK(*t.inverse_rule().u1 == v("xi^2 v1 - xi v2"));
}

TEST_CASE("inverse matrix and determinant") {
  const auto b = tangent_jacobian(threefold_spec::w(3), w6);
  CHECK(determinant(b.matrix(), 3) == u("-1"));
  const auto id = matrix_product(b.matrix(), b.inverse(), 3);
  CHECK(id == u_matrix({"1", "0", "0", "0", "1", "0", "0", "0", "1"}));
  CHECK_FALSE(matrix_inverse(u_matrix({"u1", "0", "0", "1"}), 2).has_value());
  CHECK_THROWS_AS(bundle_transition(threefold_spec::w(1), u_matrix({"1 + z"}), w6), inversion_failure);
}

TEST_CASE("endomorphism bundle conjugates") {
  const auto e = extension_to_transition({2, u("z u1")}, threefold_spec::w2_y(1), w6);
  const auto end = endomorphism_transition(e);
  CHECK(end.rank() == 4);
  // g = E11 maps to M E11 M^-1 = [[1, -z^3 u1], [0, 0]].
  CHECK(end.at(0, 0) == u("1"));
  CHECK(end.at(1, 0) == u("-1 z^3 u1"));
  CHECK(end.at(2, 0) == u("0"));
  CHECK(end.at(3, 0) == u("0"));
  CHECK(matrix_product(end.matrix(), end.inverse(), 4) ==
        u_matrix({"1", "0", "0", "0", "0", "1", "0", "0", "0", "0", "1", "0", "0", "0", "0", "1"}));
}

TEST_CASE("line bundles and the zero section") {
  const auto o = line_bundle_transition(3, threefold_spec::w(1), w6);
  CHECK(o.at(0, 0) == u("z^-3"));
  CHECK(threefold_spec::w2_y(2).preserves_line());
  threefold_spec moved = threefold_spec::w(2);
  moved.perturbations.push_back({slot::v1, u("z")});
  CHECK_FALSE(moved.preserves_line());
  CHECK(birkhoff_exponents(u_matrix({"z^3", "0", "0", "z^-1"})) == std::pair{3, -1});
  CHECK(birkhoff_exponents(u_matrix({"z^-1", "0", "0", "z^3"})) == std::pair{3, -1});
  CHECK(conormal_on_line(threefold_spec::w(3)) == std::pair{3, -1});
  CHECK(conormal_on_line(threefold_spec::w(1)) == std::pair{1, 1});
}

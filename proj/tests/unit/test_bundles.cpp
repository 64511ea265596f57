#include <doctest.h>

#include "wk/bundles.hpp"

using namespace wk;

namespace {

const truncation_policy w6 = truncation_policy::wide(6);
const truncation_policy box{3, -12, 12};

multi_series u(std::string_view s) { return parse_series(s, chart::u, w6); }

}  // namespace

TEST_CASE("split extension has the obvious splitting type") {
  const auto b = extension_to_transition({2, u("0")}, threefold_spec::w(2), w6);
  CHECK(splitting_type_on_line(b) == splitting_type{2, -2});
  const auto c = extension_to_transition({1, u("z^-1")}, threefold_spec::w(1), w6);
  // [[z, z^-1], [0, z^-1]] is balanced: degree 0 total, a z^-1 twist mixes.
  const auto t = splitting_type_on_line(c);
  CHECK(t.a1 + t.a2 == 0);
  CHECK(t.a1 >= t.a2);
}

TEST_CASE("factorisation identity holds") {
  for (int k = 2; k <= 5; ++k)
    for (int q = 1; q < k; ++q) {
      CAPTURE(k);
      CAPTURE(q);
      const auto f = wq_factorisation(k, q);
      CHECK(matrix_product(matrix_product(f.left, f.middle, 2), f.right, 2) == f.product);
      CHECK(verify_wq_identity(k, q));
    }
  CHECK_THROWS(wq_factorisation(2, 2));
}

TEST_CASE("shift equivalence carries a verifiable witness") {
  const auto s = threefold_spec::w2_y(1);
  const extension_class p{2, u("z^-1 u2")};
  const extension_class q{2, u("u1")};
  const auto d = shift_equivalent(p, q, s, box);
  REQUIRE(d.equivalent);
  REQUIRE(d.witness.has_value());
  CHECK(check_shift_witness(p, q, s, *d.witness, box.u_deg_max));
  shift_witness broken = *d.witness;
  broken.lambda += 1;
  CHECK_FALSE(check_shift_witness(p, q, s, broken, box.u_deg_max));
}

TEST_CASE("a class is shift-equivalent to itself") {
  const auto s = threefold_spec::w(3);
  const extension_class p{2, u("z^-1 u2 + z^-3")};
  CHECK(shift_equivalent(p, p, s, box).equivalent);
}

TEST_CASE("split bundles are isomorphic to themselves") {
  const auto a = extension_to_transition({1, u("0")}, threefold_spec::w(1), w6);
  const auto r = distinguish_bundles(a, a, box);
  CHECK(r.verdict != iso_verdict::not_isomorphic);
  CHECK(iso_verdict_name(iso_verdict::not_isomorphic) == "NotIsomorphic");
}

#include <doctest.h>

#include "wk/cech.hpp"

using namespace wk;

namespace {

const truncation_policy w6 = truncation_policy::wide(6);
const truncation_policy box{4, -12, 12};

multi_series u(std::string_view s) { return parse_series(s, chart::u, w6); }
multi_series v(std::string_view s) { return parse_series(s, chart::v, w6); }

cochain at(int rank, int pos, const multi_series& m) {
  cochain c(static_cast<std::size_t>(rank), multi_series(m.tag(), m.policy()));
  c[static_cast<std::size_t>(pos)] = m;
  return c;
}

bundle_factory line(int d, threefold_spec s) {
  return [d, s](truncation_policy w) { return line_bundle_transition(d, s, truncation_policy::wide(w.u_deg_max)); };
}

}  // namespace

TEST_CASE("O(-2) on W1: z^-1 is a class and z^-3 a coboundary") {
  const cech_engine e(line_bundle_transition(-2, threefold_spec::w(1), w6), box);
  const auto cls = e.is_coboundary({u("z^-1")});
  CHECK_FALSE(cls.coboundary);
  REQUIRE(cls.certificate.has_value());
  CHECK(cls.certificate->component == 0);

  const cochain sigma{u("z^-3 + 2 z^-4 u1 + z^2")};
  const auto dec = e.is_coboundary(sigma);
  REQUIRE(dec.coboundary);
  REQUIRE(dec.witness.has_value());
  CHECK(e.check_witness(sigma, *dec.witness));
  CHECK(cochain_is_zero(e.normal_form(sigma)));
}

TEST_CASE("tangent bundle of W1 has no first cohomology") {
  const auto b = h1_basis([](truncation_policy w) { return tangent_jacobian(threefold_spec::w(1), truncation_policy::wide(w.u_deg_max)); },
                          box, {4, false});
  CHECK(b.dimension() == 0);
  CHECK(b.stabilized);
}

TEST_CASE("end-of-tangent cocycle with an explicit witness") {
  const auto end = endomorphism_transition(tangent_jacobian(threefold_spec::w(2), w6));
  const cech_engine e(end, box);
  for (int s = 0; s <= 2; ++s) {
    const std::string u2s = s == 0 ? "" : " u2^" + std::to_string(s);
    const std::string v2s = s == 0 ? "1" : "v2^" + std::to_string(s);
    const cochain sigma = at(9, 3, u("z^-1 u1" + u2s));
    const coboundary_witness w{at(9, 0, u(s == 0 ? "1/2" : "1/2" + u2s)), at(9, 0, v("-1/2 " + v2s))};
    CAPTURE(s);
    CHECK(e.check_witness(sigma, w));
    CHECK(e.is_coboundary(sigma).coboundary);
  }
}

TEST_CASE("reduction is idempotent and preserves the class") {
  const cech_engine e(tangent_jacobian(threefold_spec::w2_y(3), w6), box);
  const cochain sigma{u("z^-3 u1 + z^-1"), u("z^-1 u2^2 + z^-2 u1 u2"), u("z^-1 u2")};
  const cochain r = e.reduce_representative(sigma);
  CHECK(e.reduce_representative(r) == r);
  cochain diff = sigma;
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= r[i];
  CHECK(e.is_coboundary(diff).coboundary);
  CHECK(e.normal_form(e.normal_form(sigma)) == e.normal_form(sigma));
}

TEST_CASE("classes of the line bundle O(-4) on W1 at first order") {
  const auto b = h1_basis(line(-4, threefold_spec::w(1)), {1, -12, 12}, {4, false});
  // Degree 0: z^-1 .. z^-3; degree 1 in u1 or u2: z^-1, z^-2 each.
  CHECK(b.dimension() == 7);
}

TEST_CASE("starved window reports window_too_small") {
  CHECK_THROWS_AS(h1_basis(line(-12, threefold_spec::w(1)), {1, -2, 2}, {0, false}), window_too_small);
}

#include <doctest.h>

#include "wk/deform.hpp"

using namespace wk;

namespace {

const truncation_policy w6 = truncation_policy::wide(6);

multi_series u(std::string_view s) { return parse_series(s, chart::u, w6); }
multi_series v(std::string_view s) { return parse_series(s, chart::v, w6); }

map_spec phi() {
  return {{u("z"), u("z u1^2"), u("u2")}, {v("xi"), v("v1^2"), v("xi v2")}};
}

}  // namespace

TEST_CASE("integrating a fibre cocycle perturbs the gluing") {
  const auto r = integrate_cocycle(threefold_spec::w(3), {u("0"), u("z^-1 u2"), u("0")});
  REQUIRE(std::holds_alternative<threefold_spec>(r));
  const auto& s = std::get<threefold_spec>(r);
  CHECK(s.slot_perturbation(slot::v1, w6) == u("z^2 u2"));
  CHECK(s.slot_perturbation(slot::v2, w6).is_zero());
  CHECK(build_transition(s, w6).invertible());
}

TEST_CASE("a cocycle moving the base is rejected") {
  const auto r = integrate_cocycle(threefold_spec::w(3), {u("z^-1"), u("0"), u("0")});
  CHECK(std::holds_alternative<not_integrable>(r));
}

TEST_CASE("W1 is rigid") {
  const auto r = classify_rigidity(1, 1, {3, -12, 12});
  CHECK(r.kind == rigidity_kind::zero);
  CHECK(rigidity_name(r.kind) == "zero");
  CHECK_THROWS_AS(classify_rigidity(1, 1, {1, -12, 12}), window_too_small);
}

TEST_CASE("affine bundles") {
  const auto same = affine_bundle_iso(2, 2, 3);
  CHECK(same.verdict == affine_verdict::isomorphic);

  const auto diff = affine_bundle_iso(1, 3, 3);
  REQUIRE(diff.verdict == affine_verdict::not_isomorphic);
  REQUIRE(diff.forced_a.has_value());
  CHECK(diff.forced_a->depends_on(variable::u2));

  CHECK(affine_bundle_iso(1, 3, 2).verdict == affine_verdict::inconclusive);
}

TEST_CASE("chartwise map from W2 to W3") {
  CHECK(verify_map_holomorphic(phi(), threefold_spec::w(2), threefold_spec::w(3)).holomorphic);
  map_spec broken = phi();
  broken.on_v[2] = v("v2");
  CHECK_FALSE(verify_map_holomorphic(broken, threefold_spec::w(2), threefold_spec::w(3)).holomorphic);
}

#include <doctest.h>

#include "dense_oracle.hpp"
#include "wk/bundles.hpp"

using namespace wk;
using oracle::term;

namespace {

const truncation_policy w6 = truncation_policy::wide(6);
const truncation_policy box{4, -12, 12};

multi_series u(std::string_view s) { return parse_series(s, chart::u, w6); }

// v1 = z^2 u1 + z u2^y, so u1 = xi^2 v1 - xi v2^y.
oracle::gluing w2_y(int y) {
  oracle::gluing g;
  oracle::poly v1 = term(2, 1, 0);
  oracle::accumulate(v1, term(1, 0, y));
  oracle::poly u1 = term(2, 1, 0);
  oracle::accumulate(u1, term(1, 0, y, -1));
  g.to_v = {v1, term(0, 0, 1)};
  g.to_u = {u1, term(0, 0, 1)};
  return g;
}

oracle::gluing w2_u2() { return w2_y(1); }

std::vector<oracle::poly> extension(oracle::poly p) { return {term(2, 0, 0), std::move(p), {}, term(-2, 0, 0)}; }

std::vector<oracle::poly> split_tangent(int k) {
  return {term(-2, 0, 0, -1), {}, {}, term(k - 1, 1, 0, k), term(k, 0, 0), {}, term(1 - k, 0, 1, 2 - k), {},
          term(2 - k, 0, 0)};
}

// Inverse Jacobians, worked out by hand from the lower-triangular shape.
std::vector<oracle::poly> split_tangent_inverse(int k) {
  return {term(2, 0, 0, -1), {}, {}, term(1, 1, 0, k), term(-k, 0, 0), {}, term(1, 0, 1, 2 - k), {},
          term(k - 2, 0, 0)};
}

std::vector<oracle::poly> w2_y_tangent_inverse(int y) {
  oracle::poly a = term(1, 1, 0, 2);
  oracle::accumulate(a, term(0, 0, y));
  return {term(2, 0, 0, -1), {}, {}, a, term(-2, 0, 0), term(-1, 0, y - 1, -y), {}, {},
          term(0, 0, 0)};
}

}  // namespace

TEST_CASE("oracle polynomial algebra") {
  const auto g = w2_u2();
  // v1 rewritten back to U is z^2 u1 + z u2.
  const auto back = oracle::rewrite(term(0, 1, 0), g.to_u, 3);
  CHECK(oracle::rewrite(back, g.to_v, 3) == term(0, 1, 0));
  CHECK(oracle::rank({{1, 2}, {2, 4}}) == 1);
  CHECK(oracle::rank({{0, 1}, {1, 0}, {1, 1}}) == 2);
  CHECK(oracle::line_h1(-2, oracle::split_wk(1), 0) == 1);
}

TEST_CASE("extension bundle sections agree with the oracle") {
  const auto base = threefold_spec::w2_y(1);
  for (const char* p : {"z u1", "z u2"}) {
    const auto b = extension_to_transition({2, u(p)}, base, w6);
    const auto m = extension(std::string_view(p) == "z u1" ? term(1, 1, 0) : term(1, 0, 1));
    for (int n = 0; n <= 2; ++n) {
      CAPTURE(p);
      CAPTURE(n);
      CHECK(formal_section_dimension(b, n, box) == oracle::section_count(m, 2, w2_u2(), n));
    }
    const cochain s0{u("0"), u("1")};
    CHECK(cech_engine(b, box).extends_section(s0, 0, 1) ==
          oracle::section_extends(m, 2, w2_u2(), {{}, term(0, 0, 0)}, 0, 1));
  }
}

TEST_CASE("tangent sections of split W_k agree with the oracle") {
  for (int k = 1; k <= 3; ++k)
    for (int n = 0; n <= 1; ++n) {
      CAPTURE(k);
      CAPTURE(n);
      const auto b = tangent_jacobian(threefold_spec::w(k), w6);
      CHECK(formal_section_dimension(b, n, box) == oracle::section_count(split_tangent(k), 3, oracle::split_wk(k), n));
    }
}

TEST_CASE("line bundle cohomology agrees with the oracle") {
  struct geometry {
    threefold_spec spec;
    oracle::gluing glue;
  };
  const std::vector<geometry> cases{{threefold_spec::w(1), oracle::split_wk(1)},
                                    {threefold_spec::w(2), oracle::split_wk(2)},
                                    {threefold_spec::w(3), oracle::split_wk(3)},
                                    {threefold_spec::w2_y(1), w2_u2()}};
  for (const auto& g : cases)
    for (int j = 1; j <= 3; ++j)
      for (int cap = 1; cap <= 2; ++cap) {
        const int d = -2 * j;
        const auto make = [&](truncation_policy w) {
          return line_bundle_transition(d, g.spec, truncation_policy::wide(w.u_deg_max));
        };
        CAPTURE(g.spec.k1);
        CAPTURE(j);
        CAPTURE(cap);
        CHECK(h1_basis(make, {cap, -12, 12}, {4, false}).dimension() == oracle::line_h1(d, g.glue, cap));
      }
}

TEST_CASE("tangent cohomology agrees with the oracle") {
  const auto tangent = [](threefold_spec s) {
    return [s](truncation_policy w) { return tangent_jacobian(s, truncation_policy::wide(w.u_deg_max)); };
  };
  for (int cap = 0; cap <= 2; ++cap) {
    CAPTURE(cap);
    for (int k = 1; k <= 3; ++k) {
      CAPTURE(k);
      CHECK(h1_basis(tangent(threefold_spec::w(k)), {cap, -12, 12}, {4, false}).dimension() ==
            oracle::bundle_h1(split_tangent_inverse(k), 3, oracle::split_wk(k), cap));
    }
    for (int y = 1; y <= 4; ++y) {
      CAPTURE(y);
      CHECK(h1_basis(tangent(threefold_spec::w2_y(y)), {cap, -12, 12}, {4, false}).dimension() ==
            oracle::bundle_h1(w2_y_tangent_inverse(y), 3, w2_y(y), cap));
    }
  }
}

TEST_CASE("tangent cohomology of split products agrees with the oracle") {
  struct product {
    int k1, k2;
  };
  for (const auto [k1, k2] : {product{0, -1}, product{1, 0}, product{2, -1}}) {
    oracle::gluing g;
    g.to_v = {term(k1, 1, 0), term(k2, 0, 1)};
    g.to_u = g.to_v;
    const std::vector<oracle::poly> inv{term(2, 0, 0, -1), {}, {}, term(1, 1, 0, k1), term(-k1, 0, 0), {},
                                        term(1, 0, 1, k2), {}, term(-k2, 0, 0)};
    const auto make = [k1, k2](truncation_policy w) {
      return tangent_jacobian(threefold_spec::product(k1, k2), truncation_policy::wide(w.u_deg_max));
    };
    for (int cap = 0; cap <= (k1 == 0 ? 6 : 4); ++cap) {
      CAPTURE(k1);
      CAPTURE(k2);
      CAPTURE(cap);
      CHECK(h1_basis(make, {cap, -12, 12}, {4, false}).dimension() == oracle::bundle_h1(inv, 3, g, cap));
    }
  }
}

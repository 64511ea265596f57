#include "helpers.hpp"

namespace wk::suite {

using namespace detail;

namespace {

std::string pair_text(int a, int b) { return "(" + std::to_string(a) + ", " + std::to_string(b) + ")"; }

std::vector<check_result> wq(const suite_config& cfg) {
  std::vector<check_result> out;
  std::vector<std::string> bad;
  for (int k = 2; k <= 6; ++k)
    for (int q = 1; q < k; ++q)
      if (!verify_wq_identity(k, q)) bad.push_back(pair_text(k, q));
  out.push_back(make_bool_check(7, "factorisation identity for 0 < q < k <= 6", bad.empty(), "all hold",
                                bad.empty() ? "all hold" : "fails for " + join(bad)));
  for (int k = 2; k <= 6; ++k)
    for (int q = 1; q < k; ++q) {
      const series_matrix m{u_mono(k, 0, 0, cfg), u_mono(q, 0, 0, cfg), multi_series(chart::u, wide(cfg)),
                            u_mono(2 - k, 0, 0, cfg)};
      const bundle_transition b(threefold_spec::w(k), m, wide(cfg), "rank-2");
      const auto st = splitting_type_on_line(b);
      out.push_back(make_check(7, "splitting type of [[z^" + std::to_string(k) + ", z^" + std::to_string(q) +
                                      "], [0, z^" + std::to_string(2 - k) + "]]",
                               pair_text(std::max(q, 2 - q), std::min(q, 2 - q)), pair_text(st.a1, st.a2)));
    }
  return out;
}

threefold_spec w2_u2(const suite_config& cfg) { return threefold_spec::w2_tau(u_series("u2", cfg)); }

std::vector<check_result> ext_generators(const suite_config& cfg) {
  const int top = cfg.window.u_deg_max - 2;
  const std::vector<exponent> shapes{{1, 0, 0}, {0, 0, 0}, {-1, 0, 0}, {1, 1, 0}, {0, 1, 0}, {1, 2, 0}};
  std::vector<std::string> want;
  for (int s = 0; s <= top; ++s)
    for (auto e : shapes) want.push_back(render_monomial({e.z, e.u1, e.u2 + s}, chart::u));
  std::vector<std::string> got, off_shape;
  for (const auto& g : ext_generator_monomials(2, w2_u2(cfg), cfg.window)) {
    const exponent e = g.terms().begin()->first;
    const bool known = std::any_of(shapes.begin(), shapes.end(), [&](const exponent& sh) {
      return sh.z == e.z && sh.u1 == e.u1 && e.u2 >= 0;
    });
    if (!known) off_shape.push_back(g.render());
    if (e.u2 <= top) got.push_back(render_monomial(e, chart::u));
  }
  return {make_check(8, "generator monomials with s <= " + std::to_string(top), sorted_set(want), sorted_set(got)),
          make_check(8, "generators outside the six shapes", "{}", sorted_set(off_shape))};
}

std::vector<check_result> moduli(const suite_config& cfg) {
  std::vector<check_result> out;
  const basis_options o = options(cfg);
  for (int k = 1; k <= 3; ++k) {
    for (int j = 2; j <= 4; ++j) {
      const auto r = first_neighborhood_moduli(j, threefold_spec::w(k), cfg.window, o);
      const std::string tag = "W" + std::to_string(k) + ", j=" + std::to_string(j);
      out.push_back(make_check(9, "projective dimension over " + tag, std::to_string(4 * j - 5),
                               std::to_string(r.projective_dimension)));
      out.push_back(make_check(9, "first-order count over " + tag, std::to_string(4 * (j - 1)), std::to_string(r.count)));
    }
    const auto r = first_neighborhood_moduli(1, threefold_spec::w(k), cfg.window, o);
    const char* names[] = {"empty", "point", "line"};
    auto shape = [&](int pd) { return pd >= -1 && pd <= 1 ? std::string(names[pd + 1]) : std::to_string(pd); };
    out.push_back(make_check(9, "j=1 moduli over W" + std::to_string(k), names[k - 1], shape(r.projective_dimension)));
  }
  return out;
}

bundle_transition e1(const suite_config& cfg) {
  return extension_to_transition({2, u_series("z u1", cfg)}, w2_u2(cfg), wide(cfg));
}
bundle_transition e2(const suite_config& cfg) {
  return extension_to_transition({2, u_series("z u2", cfg)}, w2_u2(cfg), wide(cfg));
}

std::vector<check_result> decrease(const suite_config& cfg) {
  std::vector<check_result> out;
  const threefold_spec s = w2_u2(cfg);
  const auto d = shift_equivalent({2, u_series("z^-1 u2", cfg)}, {2, u_series("u1", cfg)}, s, cfg.window);
  out.push_back(make_bool_check(10, "z^-1 u2 and u1 are shift-equivalent", d.equivalent));
  if (d.witness) {
    out.push_back(make_check(10, "witness beta", "-v1", d.witness->beta.render()));
    out.push_back(make_bool_check(10, "witness verifies",
                                  check_shift_witness({2, u_series("z^-1 u2", cfg)}, {2, u_series("u1", cfg)}, s,
                                                      *d.witness, cfg.window.u_deg_max)));
  }
  const auto r = first_neighborhood_moduli(2, s, cfg.window, options(cfg));
  const int pd = r.projective_dimension;
  out.push_back(make_bool_check(10, "moduli dimension over W2(u2), j=2, in [1, 3)", pd >= 1 && pd < 3, "1 or 2",
                                std::to_string(pd)));
  const auto iso = distinguish_bundles(e1(cfg), e2(cfg), cfg.window, options(cfg));
  out.push_back(make_check(10, "E1 versus E2", "NotIsomorphic", std::string(iso_verdict_name(iso.verdict))));
  return out;
}

std::vector<check_result> sections(const suite_config& cfg) {
  std::vector<check_result> out;
  const auto b1 = e1(cfg);
  const auto b2 = e2(cfg);
  const cochain s0{u_series("0", cfg), u_series("1", cfg)};
  const bool ext1 = cech_engine(b1, cfg.window).extends_section(s0, 0, 1);
  const bool ext2 = cech_engine(b2, cfg.window).extends_section(s0, 0, 1);
  out.push_back(make_check(11, "s0 extends to first order for E2", "true", ext2 ? "true" : "false"));
  out.push_back(make_check(11, "s0 extends to first order for E1", "false", ext1 ? "true" : "false"));
  const int d1 = formal_section_dimension(b1, 1, cfg.window, options(cfg));
  const int d2 = formal_section_dimension(b2, 1, cfg.window, options(cfg));
  out.push_back(make_bool_check(11, "first-order section dimensions differ", d1 != d2, "different",
                                std::to_string(d1) + " and " + std::to_string(d2)));
  out.push_back({11, "first-order sections of E1 (reference value)", "5", std::to_string(d1), status::recorded});
  out.push_back({11, "first-order sections of E2 (reference value)", "6", std::to_string(d2), status::recorded});
  return out;
}

}  // namespace

std::vector<criterion> bundle_criteria() {
  return {
      {7, "factorisation and splitting types", 0, wq},
      {8, "extension generator monomials", 2, ext_generators},
      {9, "first-neighborhood moduli", 1, moduli},
      {10, "moduli over W2(u2)", 2, decrease},
      {11, "sections on the first neighborhood", 1, sections},
  };
}

}  // namespace wk::suite

#include "helpers.hpp"

namespace wk::suite {

using namespace detail;

namespace {

std::vector<check_result> rigidity_w1(const suite_config& cfg) {
  const auto b = h1_basis(tangent_factory(threefold_spec::w(1)), cfg.window, options(cfg));
  return {make_check(1, "h1(W1, T) dimension", "0", std::to_string(b.dimension())),
          make_bool_check(1, "h1(W1, T) stabilized", b.stabilized)};
}

cochain sigma(int s, const suite_config& cfg) { return single(3, 1, u_mono(-1, 0, s, cfg)); }

std::vector<check_result> h1_w2y(const suite_config& cfg) {
  std::vector<check_result> out;
  for (int y = 0; y <= 6; ++y) {
    const auto b = h1_basis(tangent_factory(threefold_spec::w2_y(y)), cfg.window, options(cfg));
    const int expected = y >= 2 ? y - 1 : 0;
    const std::string tag = "W2(" + std::to_string(y) + ")";
    out.push_back(make_check(2, "h1(" + tag + ", T)", std::to_string(expected), std::to_string(b.dimension())));
    std::vector<std::string> want, got;
    for (int s = 0; s < expected; ++s) want.push_back(render_cochain(sigma(s, cfg)));
    for (const auto& c : b.classes) got.push_back(render_cochain(c));
    out.push_back(make_check(2, "basis of h1(" + tag + ", T)", sorted_set(want), sorted_set(got)));
    if (expected > 0) {
      const cech_engine engine = tangent_engine(threefold_spec::w2_y(y), cfg);
      std::vector<cochain> sigmas;
      for (int s = 0; s < expected; ++s) sigmas.push_back(sigma(s, cfg));
      out.push_back(make_bool_check(2, "sigma_0..sigma_" + std::to_string(expected - 1) + " independent over " + tag,
                                    independent_classes(engine, sigmas)));
    }
  }
  return out;
}

struct case_witness {
  std::string name;
  int y;
  int s;
  cochain alpha;  // U-holomorphic correction, sigma = alpha + J^-1 beta
  cochain beta;   // V-holomorphic, V frame
};

std::vector<check_result> coboundary_witnesses(const suite_config& cfg) {
  auto v_mono = [&](int xi, int i, int s, const rational& c) {
    return multi_series::monomial(chart::v, {xi, i, s}, c, wide(cfg));
  };
  auto u0 = multi_series(chart::u, wide(cfg));
  auto v0 = multi_series(chart::v, wide(cfg));
  std::vector<case_witness> cases;
  for (int s : {3, 4}) {
    const int y = 3;
    rational two_y(2, y);
    two_y.canonicalize();
    cases.push_back({"case 1 (y=3, s=" + std::to_string(s) + ")", y, s,
                     {u_mono(1, 0, s - y, cfg), u0, u_mono(0, 0, s - y + 1, cfg, two_y)},
                     {v_mono(1, 0, s - y, 1), v_mono(0, 1, s - y, -2), v_mono(0, 0, s - y + 1, -two_y)}});
  }
  // J [0, z^-1 u2^(y-1), -1/y] is the constant -1/y.
  cases.push_back({"case 2 (y=3, s=2)", 3, 2, {u0, u0, u_mono(0, 0, 0, cfg, rational(1, 3))},
                   {v0, v0, v_mono(0, 0, 0, rational(-1, 3))}});
  for (int s = 0; s <= 2; ++s)
    cases.push_back({"case 3 (y=0, s=" + std::to_string(s) + ")", 0, s, {u_mono(1, 0, s, cfg, -1), u0, u0},
                     {v_mono(1, 0, s, -1), v_mono(0, 1, s, 2), v0}});

  std::vector<check_result> out;
  for (const auto& c : cases) {
    const cech_engine engine = tangent_engine(threefold_spec::w2_y(c.y), cfg);
    const cochain sig = sigma(c.s, cfg);
    const auto d = engine.is_coboundary(sig);
    out.push_back(make_bool_check(3, c.name + ": solver finds a coboundary", d.coboundary));
    if (d.coboundary)
      out.push_back(make_bool_check(3, c.name + ": solver witness recomposes", engine.check_witness(sig, *d.witness)));
    const coboundary_witness shown{c.alpha, c.beta};
    out.push_back(make_bool_check(3, c.name + ": explicit witness recomposes", engine.check_witness(sig, shown),
                                  "true", engine.check_witness(sig, shown) ? "true" : render_cochain(engine.recompose(shown))));
  }
  return out;
}

std::vector<check_result> w3_classes(const suite_config& cfg) {
  const cech_engine engine = tangent_engine(threefold_spec::w(3), cfg);
  std::vector<check_result> out;
  std::vector<cochain> all;
  for (int l : {-1, -2})
    for (int s = 0; s <= 4; ++s) {
      const cochain c = single(3, 1, u_mono(l, 0, s, cfg));
      all.push_back(c);
      out.push_back(make_bool_check(4, render_cochain(c) + " is not a coboundary", !engine.is_coboundary(c).coboundary));
    }
  out.push_back(make_bool_check(4, "the ten classes are independent", independent_classes(engine, all)));
  return out;
}

std::vector<check_result> end_tangent_w2(const suite_config& cfg) {
  const threefold_spec w2 = threefold_spec::w(2);
  auto make = [w2](truncation_policy w) {
    return endomorphism_transition(tangent_jacobian(w2, truncation_policy::wide(w.u_deg_max)));
  };
  const cech_engine engine(make(cfg.window), cfg.window);
  std::vector<check_result> out;
  for (int s = 0; s <= 2; ++s) {
    std::vector<std::pair<int, multi_series>> listed{{4, u_mono(-1, 1, s, cfg)}};
    for (int i = 1; i <= 3; ++i) listed.emplace_back(4, u_mono(-i, 0, s, cfg));
    listed.emplace_back(6, u_mono(-1, 0, s, cfg));
    listed.emplace_back(7, u_mono(-1, 0, s, cfg));
    for (const auto& [pos, m] : listed) {
      const cochain c = single(9, pos - 1, m);
      out.push_back(make_bool_check(15, "position " + std::to_string(pos) + " " + m.render() + " is not a coboundary",
                                    !engine.is_coboundary(c).coboundary));
    }
  }
  const auto b = h1_basis(make, cfg.window, options(cfg, true));
  std::vector<std::string> dims;
  for (int d : b.per_cap_dimensions) dims.push_back(std::to_string(d));
  const bool growing = b.per_cap_dimensions.size() == 3 && b.per_cap_dimensions[0] < b.per_cap_dimensions[1] &&
                       b.per_cap_dimensions[1] < b.per_cap_dimensions[2];
  out.push_back(make_bool_check(15, "h1(W2, End T) grows across caps", growing, "growing",
                                join(dims) + (b.family_pattern ? " with " + *b.family_pattern : "")));
  return out;
}

}  // namespace

std::vector<criterion> cohomology_criteria() {
  return {
      {1, "rigidity of W1", 1, rigidity_w1},
      {2, "h1 of the W2(y) family", 6, h1_w2y},
      {3, "coboundary witnesses", 4, coboundary_witnesses},
      {4, "independent classes over W3", 4, w3_classes},
      {15, "endomorphism classes over W2", 3, end_tangent_w2},
  };
}

}  // namespace wk::suite

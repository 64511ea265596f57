#include "helpers.hpp"

namespace wk::suite {

using namespace detail;

namespace {

bool integrable(const threefold_spec& spec, const cochain& c, int u_deg) {
  return std::holds_alternative<threefold_spec>(integrate_cocycle(spec, c, u_deg));
}

std::vector<check_result> integrability(const suite_config& cfg) {
  const threefold_spec w3 = threefold_spec::w(3);
  std::vector<check_result> out;
  for (int slot_index : {1, 2}) {
    std::vector<std::string> wrong;
    for (int l = -4; l <= -1; ++l)
      for (int i = 0; i <= 3; ++i)
        for (int s = 0; s <= 3; ++s) {
          const cochain c = single(3, slot_index, u_mono(l, i, s, cfg));
          const bool expected = slot_index == 1 ? i == 0 : s == 0;
          if (integrable(w3, c, cfg.window.u_deg_max) != expected) wrong.push_back(render_cochain(c));
        }
    const std::string rule = slot_index == 1 ? "integrable iff i = 0" : "integrable iff s = 0";
    out.push_back(make_bool_check(5, "slot " + std::to_string(slot_index + 1) + " monomials z^l u1^i u2^s", wrong.empty(),
                                  rule, wrong.empty() ? rule : "mismatch at " + join(wrong)));
  }
  return out;
}

std::vector<check_result> family(const suite_config& cfg) {
  std::vector<check_result> out;
  for (int k = 2; k <= 5; ++k) {
    const threefold_spec wk_spec = threefold_spec::w(k);
    // distinct primes stand in for the parameters t_0 .. t_(k-1)
    const int primes[] = {2, 3, 5, 7, 11};
    multi_series slot2(chart::u, wide(cfg));
    multi_series expected = u_mono(k, 1, 0, cfg);
    for (int q = 0; q < k; ++q) {
      slot2 += u_mono(q - k, 0, 1, cfg, rational(primes[q]));
      expected += u_mono(q, 0, 1, cfg, rational(primes[q]));
    }
    cochain c{multi_series(chart::u, wide(cfg)), slot2, multi_series(chart::u, wide(cfg))};
    const auto r = integrate_cocycle(wk_spec, c, cfg.window.u_deg_max);
    const std::string name = "family of W" + std::to_string(k);
    if (!std::holds_alternative<threefold_spec>(r)) {
      out.push_back(make_check(6, name, expected.render(), std::get<not_integrable>(r).reason));
      continue;
    }
    const transition t = build_transition(std::get<threefold_spec>(r), wide(cfg));
    out.push_back(make_check(6, name + ": v1 rule", expected.render(), t.forward.u1->render()));
    out.push_back(make_check(6, name + ": v2 rule", u_mono(2 - k, 0, 1, cfg).render(), t.forward.u2->render()));
  }
  return out;
}

map_spec map_from(const std::array<const char*, 3>& on_u, const std::array<const char*, 3>& on_v,
                  const suite_config& cfg) {
  map_spec m;
  for (std::size_t i = 0; i < 3; ++i) {
    m.on_u[i] = u_series(on_u[i], cfg);
    m.on_v[i] = v_series(on_v[i], cfg);
  }
  return m;
}

/// The W3 family v1 = z^3 u1 + z^2 t(u2) mapped to the W2 family v1 = z^2 u1 + z t(u2).
check_result deformed_map(const std::vector<int>& t, const suite_config& cfg, const std::string& label) {
  multi_series t_u2(chart::u, wide(cfg));
  multi_series shift_term(chart::u, wide(cfg));
  for (std::size_t s = 0; s < t.size(); ++s) {
    t_u2 += u_mono(0, 0, static_cast<int>(s), cfg, rational(t[s]));
    shift_term += u_mono(1, 0, static_cast<int>(s) + 1, cfg, rational(t[s]));
  }
  threefold_spec source = threefold_spec::w(3);
  source.perturbations.push_back({slot::v1, t_u2.shifted_z(2)});
  const threefold_spec target = threefold_spec::w2_tau(t_u2);
  map_spec m = map_from({"z", "u1", "0"}, {"xi", "xi v1", "v1 v2"}, cfg);
  m.on_u[2] = u_series("z^2 u1 u2", cfg) + shift_term;
  const auto c = verify_map_holomorphic(m, source, target, cfg.window.u_deg_max);
  return make_check(12, label, "holomorphic", c.holomorphic ? "holomorphic" : c.reason);
}

std::vector<check_result> maps(const suite_config& cfg) {
  const int d = cfg.window.u_deg_max;
  const auto phi = verify_map_holomorphic(map_from({"z", "z u1^2", "u2"}, {"xi", "v1^2", "xi v2"}, cfg),
                                          threefold_spec::w(2), threefold_spec::w(3), d);
  const auto psi = verify_map_holomorphic(map_from({"z", "u1", "z^2 u1 u2"}, {"xi", "xi v1", "v1 v2"}, cfg),
                                          threefold_spec::w(3), threefold_spec::w(2), d);
  return {make_check(12, "phi: W2 -> W3", "holomorphic", phi.holomorphic ? "holomorphic" : phi.reason),
          make_check(12, "psi: W3 -> W2", "holomorphic", psi.holomorphic ? "holomorphic" : psi.reason),
          deformed_map({1, 2}, cfg, "phi-bar with (t0, t1) = (1, 2)"),
          deformed_map({1}, cfg, "phi-bar with (t0, t1) = (1, 0)")};
}

std::vector<check_result> affine(const suite_config& cfg) {
  std::vector<check_result> out;
  for (auto [j1, j2] : std::vector<std::pair<int, int>>{{1, 2}, {1, 3}, {2, 3}}) {
    const auto r = affine_bundle_iso(j1, j2, cfg.window.u_deg_max);
    const std::string tag = "E(" + std::to_string(j1) + ") vs E(" + std::to_string(j2) + ")";
    out.push_back(make_check(13, tag + " verdict", "NotIsomorphic", std::string(affine_verdict_name(r.verdict))));
    out.push_back(make_check(13, tag + " forced A", u_mono(0, 0, j2 - j1, cfg).render(),
                             r.forced_a ? r.forced_a->render() : "none"));
  }
  return out;
}

std::vector<check_result> rigidity(const suite_config& cfg) {
  std::vector<check_result> out;
  const std::vector<std::tuple<int, int, std::string>> cases{
      {0, -1, "zero"},          {0, 0, "zero"},           {2, 1, "finite"},         {3, 2, "finite"},
      {2, -1, "growingPattern"}, {3, 0, "growingPattern"}, {3, -1, "growingPattern"}};
  for (const auto& [k1, k2, want] : cases) {
    const auto r = classify_rigidity(k1, k2, cfg.window, options(cfg));
    std::vector<std::string> dims;
    for (int d : r.per_cap) dims.push_back(std::to_string(d));
    auto c = make_check(14, "W(" + std::to_string(k1) + ", " + std::to_string(k2) + ")", want,
                        std::string(rigidity_name(r.kind)));
    c.computed += " [" + join(dims) + "]";
    out.push_back(c);
  }
  return out;
}

}  // namespace

std::vector<criterion> deformation_criteria() {
  return {
      {5, "integrability over W3", 3, integrability},
      {6, "parameter families of W_k", 1, family},
      {12, "holomorphic maps", 2, maps},
      {13, "affine bundles", 3, affine},
      {14, "rigidity classification", 2, rigidity},
  };
}

}  // namespace wk::suite

#include "wk/deform.hpp"

#include <algorithm>

namespace wk {

std::variant<threefold_spec, not_integrable> integrate_cocycle(const threefold_spec& spec, const cochain& c,
                                                               int u_deg_max) {
  if (c.size() != 3) throw precondition_error("a tangent cocycle has three components");
  if (!c[0].is_zero()) return not_integrable{"base component " + c[0].render() + " is not supported"};
  const truncation_policy work = truncation_policy::wide(u_deg_max);
  threefold_spec out = spec;
  if (!c[1].is_zero()) out.perturbations.push_back({slot::v1, c[1].with_policy(work).shifted_z(spec.k1)});
  if (!c[2].is_zero()) out.perturbations.push_back({slot::v2, c[2].with_policy(work).shifted_z(spec.k2)});
  const transition t = build_transition(out, work);
  if (!t.invertible()) return not_integrable{t.failure_reason()};
  return out;
}

std::string_view rigidity_name(rigidity_kind k) {
  switch (k) {
    case rigidity_kind::zero: return "zero";
    case rigidity_kind::finite: return "finite";
    case rigidity_kind::growing: return "growingPattern";
  }
  return "zero";
}

rigidity_report classify_rigidity(int k1, int k2, truncation_policy t, basis_options opts) {
  if (t.u_deg_max < 2) throw window_too_small("rigidity needs three u-degree caps; raise the u-degree cap to 2");
  const threefold_spec spec = threefold_spec::product(k1, k2);
  opts.search_pattern = true;
  const cohomology_basis b = h1_basis(
      [&](truncation_policy w) { return tangent_jacobian(spec, truncation_policy::wide(w.u_deg_max)); }, t, opts);
  rigidity_report r;
  r.per_cap = b.per_cap_dimensions;
  r.pattern = b.family_pattern;
  const bool all_zero = std::all_of(r.per_cap.begin(), r.per_cap.end(), [](int d) { return d == 0; });
  const bool constant = std::adjacent_find(r.per_cap.begin(), r.per_cap.end(), std::not_equal_to<>()) == r.per_cap.end();
  if (all_zero) {
    r.kind = rigidity_kind::zero;
  } else if (constant) {
    r.kind = rigidity_kind::finite;
    r.dimension = r.per_cap.back();
  } else {
    r.kind = rigidity_kind::growing;
    r.dimension = r.per_cap.back();
  }
  return r;
}

std::string_view affine_verdict_name(affine_verdict v) {
  switch (v) {
    case affine_verdict::not_isomorphic: return "NotIsomorphic";
    case affine_verdict::isomorphic: return "Isomorphic";
    case affine_verdict::inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

namespace {

// Unknown coefficients of A^U, A^V, b^U, b^V on monomials z^(+-m) u2^n.
enum class unknown_kind : std::uint8_t { a_u, a_v, b_u, b_v };

struct unknown {
  unknown_kind kind;
  int m;
  int n;
};

using eq_key = std::pair<int, exponent>;  // (equation, monomial in z and u2)

}  // namespace

affine_iso_report affine_bundle_iso(int j1, int j2, int ansatz_degree) {
  if (j1 < 1 || j2 < 1 || ansatz_degree < 0) throw precondition_error("affine bundles need j1, j2 >= 1");
  if (j1 > j2) std::swap(j1, j2);
  affine_iso_report r;
  r.ansatz_degree = ansatz_degree;
  if (ansatz_degree < j2) {
    r.verdict = affine_verdict::inconclusive;
    r.reason = "ansatz degree " + std::to_string(ansatz_degree) + " is below " + std::to_string(j2);
    return r;
  }
  const int d = ansatz_degree;
  std::vector<unknown> unknowns;
  for (auto k : {unknown_kind::a_u, unknown_kind::a_v, unknown_kind::b_u, unknown_kind::b_v})
    for (int m = 0; m <= d; ++m)
      for (int n = 0; n <= d; ++n) unknowns.push_back({k, m, n});

  // Linear part: A^V(1/z, u2) - A^U(z, u2) = 0.
  // Affine part: z^2 u2^j1 A^V(1/z, u2) + b^V(1/z, u2) - z^3 b^U(z, u2) = z^2 u2^j2.
  auto column = [&](const unknown& u) {
    sparse_vector<eq_key> v;
    switch (u.kind) {
      case unknown_kind::a_u: v[{0, {u.m, 0, u.n}}] = -1; break;
      case unknown_kind::a_v:
        v[{0, {-u.m, 0, u.n}}] = 1;
        v[{1, {2 - u.m, 0, u.n + j1}}] = 1;
        break;
      case unknown_kind::b_u: v[{1, {u.m + 3, 0, u.n}}] = -1; break;
      case unknown_kind::b_v: v[{1, {-u.m, 0, u.n}}] = 1; break;
    }
    return v;
  };

  sparse_echelon<eq_key> ech;
  std::vector<combination> kernel;
  for (std::size_t id = 0; id < unknowns.size(); ++id) {
    auto red = ech.insert(static_cast<int>(id), column(unknowns[id]));
    if (red.residual.empty()) kernel.push_back(red.comb);
  }
  const sparse_vector<eq_key> rhs{{{1, {2, 0, j2}}, rational(1)}};
  auto red = ech.reduce(rhs);
  if (!red.residual.empty()) {
    r.verdict = affine_verdict::not_isomorphic;
    r.reason = "the matching equations have no solution";
    r.contradiction = red.residual.begin()->first.second;
    return r;
  }
  // particular solution x = -comb
  const truncation_policy p = truncation_policy::wide(2 * d + j2);
  multi_series a_u(chart::u, p);
  for (const auto& [id, c] : red.comb) {
    const auto& u = unknowns[static_cast<std::size_t>(id)];
    if (u.kind == unknown_kind::a_u) a_u.add_term({u.m, 0, u.n}, -c);
  }
  const bool a_free = std::any_of(kernel.begin(), kernel.end(), [&](const combination& k) {
    return std::any_of(k.begin(), k.end(), [&](const auto& kv) {
      return unknowns[static_cast<std::size_t>(kv.first)].kind == unknown_kind::a_u;
    });
  });
  const bool unit_constant = sgn(a_u.coefficient({})) != 0;
  const bool constant_free = std::any_of(kernel.begin(), kernel.end(), [&](const combination& k) {
    for (const auto& [id, c] : k) {
      const auto& u = unknowns[static_cast<std::size_t>(id)];
      if (u.kind == unknown_kind::a_u && u.m == 0 && u.n == 0) return true;
    }
    return false;
  });
  if (!a_free) r.forced_a = a_u;
  if (unit_constant || constant_free) {
    r.verdict = affine_verdict::isomorphic;
    r.reason = "a solution with nowhere-vanishing linear part exists";
    return r;
  }
  r.verdict = affine_verdict::not_isomorphic;
  r.reason = "every solution has A^U = " + a_u.render() + ", which vanishes on u2 = 0";
  // with A a nonzero constant the affine part leaves z^2 u2^j1 unmatched
  r.contradiction = exponent{2, 0, j1};
  return r;
}

map_check verify_map_holomorphic(const map_spec& m, const threefold_spec& source, const threefold_spec& target,
                                 int u_deg_max) {
  const truncation_policy work = truncation_policy::wide(u_deg_max);
  const transition ts = build_transition(source, work);
  const transition tt = build_transition(target, work);
  if (!ts.invertible() || !tt.invertible()) throw precondition_error("both gluings must be invertible");
  map_check out;
  for (int i = 0; i < 3; ++i) {
    const auto& u = m.on_u[static_cast<std::size_t>(i)];
    const auto& v = m.on_v[static_cast<std::size_t>(i)];
    if (u.tag() != chart::u || !is_holomorphic(u)) {
      out.reason = "U component " + std::to_string(i + 1) + " is not holomorphic on U";
      return out;
    }
    if (v.tag() != chart::v || !is_holomorphic(v)) {
      out.reason = "V component " + std::to_string(i + 1) + " is not holomorphic on V";
      return out;
    }
  }
  substitution_rule along_u;
  along_u.target = chart::u;
  along_u.z = m.on_u[0].with_policy(work);
  along_u.u1 = m.on_u[1].with_policy(work);
  along_u.u2 = m.on_u[2].with_policy(work);
  const std::array<const std::optional<multi_series>*, 3> target_rules{&tt.forward.z, &tt.forward.u1, &tt.forward.u2};
  for (int i = 0; i < 3; ++i) {
    const multi_series lhs = substitute(**target_rules[static_cast<std::size_t>(i)], along_u, work);
    const multi_series rhs = substitute(m.on_v[static_cast<std::size_t>(i)].with_policy(work), ts.forward, work);
    if (!(lhs == rhs)) {
      out.reason = "coordinate " + std::to_string(i + 1) + ": " + lhs.render() + " differs from " + rhs.render();
      return out;
    }
  }
  out.holomorphic = true;
  return out;
}

}  // namespace wk

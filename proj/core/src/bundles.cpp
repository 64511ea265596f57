#include "wk/bundles.hpp"

#include <algorithm>

namespace wk {

splitting_type splitting_type_on_line(const bundle_transition& b) {
  if (b.rank() != 2) throw precondition_error("splitting type needs a rank-2 bundle");
  series_matrix line;
  for (const auto& e : b.matrix()) line.push_back(e.u_degree_part(0));
  const auto [a1, a2] = birkhoff_exponents(line);
  return {a1, a2};
}

wq_factors wq_factorisation(int k, int q) {
  if (!(k > q && q > 0)) throw precondition_error("the identity needs k > q > 0");
  const truncation_policy p = truncation_policy::wide(0);
  auto mono = [&](int z, int c = 1) { return multi_series::monomial(chart::u, {z, 0, 0}, rational(c), p); };
  const multi_series zero(chart::u, p);
  wq_factors f;
  f.left = {mono(0), zero, mono(-k - q + 2), mono(0, -1)};
  f.middle = {mono(k), mono(q), zero, mono(2 - k)};
  f.right = {zero, mono(0), mono(0), mono(k - q, -1)};
  f.product = matrix_product(matrix_product(f.left, f.middle, 2), f.right, 2);
  return f;
}

bool verify_wq_identity(int k, int q) {
  const wq_factors f = wq_factorisation(k, q);
  const truncation_policy p = truncation_policy::wide(0);
  const multi_series zero(chart::u, p);
  const series_matrix expected{multi_series::monomial(chart::u, {q, 0, 0}, rational(1), p), zero, zero,
                               multi_series::monomial(chart::u, {2 - q, 0, 0}, rational(1), p)};
  if (f.product != expected) return false;
  auto constant_unit = [](const multi_series& d) {
    return d.is_monomial() && d.terms().begin()->first == exponent{} && sgn(d.terms().begin()->second) != 0;
  };
  // holomorphic on V means no positive power of z = 1/xi
  const bool left_v = std::all_of(f.left.begin(), f.left.end(), [](const multi_series& e) {
    return e.is_zero() || e.max_z() <= 0;
  });
  const bool right_u = std::all_of(f.right.begin(), f.right.end(), [](const multi_series& e) { return is_holomorphic(e); });
  return left_v && right_u && constant_unit(determinant(f.left, 2)) && constant_unit(determinant(f.right, 2));
}

namespace {

cochain as_cochain(const multi_series& s) { return cochain{s}; }

}  // namespace

shift_decision shift_equivalent(const extension_class& p, const extension_class& q, const threefold_spec& spec,
                                truncation_policy t) {
  if (p.j != q.j) throw precondition_error("shift-equivalence needs equal splitting types");
  const int j = p.j;
  const truncation_policy work = truncation_policy::wide(t.u_deg_max);
  const cech_engine engine(line_bundle_transition(-2 * j, spec, work), t);
  const cochain sp = as_cochain(p.p.with_policy(work).shifted_z(-j));
  const cochain sq = as_cochain(q.p.with_policy(work).shifted_z(-j));

  shift_decision out;
  std::optional<cech_engine::affine_solution> sol;
  const auto dq = engine.is_coboundary(sq);
  if (dq.coboundary) {
    const auto dp = engine.is_coboundary(sp);
    if (!dp.coboundary) return out;
    sol = cech_engine::affine_solution{rational(1), {}};
    sol->witness.alpha = {dp.witness->alpha[0] - dq.witness->alpha[0]};
    sol->witness.beta = {dp.witness->beta[0] - dq.witness->beta[0]};
  } else {
    sol = engine.solve_affine(sp, sq);
    if (!sol || sgn(sol->lambda) == 0) return out;
  }
  // sigma_p - lambda sigma_q = a + z^-2j beta0  gives  p + z^j (-a) + z^-j (-beta0) = lambda q
  shift_witness w{sol->lambda, -sol->witness.alpha[0], -sol->witness.beta[0]};
  if (!check_shift_witness(p, q, spec, w, t.u_deg_max))
    throw window_too_small("shift witness does not recompose within the window");
  out.equivalent = true;
  out.witness = std::move(w);
  return out;
}

bool check_shift_witness(const extension_class& p, const extension_class& q, const threefold_spec& spec,
                         const shift_witness& w, int u_deg_max) {
  if (!is_holomorphic(w.b) || !is_holomorphic(w.beta) || w.b.tag() != chart::u || w.beta.tag() != chart::v)
    return false;
  const truncation_policy work = truncation_policy::wide(u_deg_max);
  const transition tr = build_transition(spec, work);
  const multi_series lhs = p.p.with_policy(work) + w.b.with_policy(work).shifted_z(p.j) +
                           substitute(w.beta.with_policy(work), tr.forward, work).shifted_z(-p.j);
  return lhs == q.p.with_policy(work).scaled(w.lambda);
}

moduli_report first_neighborhood_moduli(int j, const threefold_spec& spec, truncation_policy t,
                                        basis_options opts) {
  if (j < 1) throw precondition_error("moduli need j >= 1");
  truncation_policy w = t;
  w.u_deg_max = 1;
  opts.search_pattern = false;
  auto make = [&](truncation_policy x) {
    return line_bundle_transition(-2 * j, spec, truncation_policy::wide(x.u_deg_max));
  };
  const cohomology_basis basis = h1_basis(make, w, opts);
  moduli_report r;
  r.j = j;
  r.spec = spec;
  r.certified_window = basis.certified_window;
  for (const auto& c : basis.classes)
    if (c[0].min_u_degree() == 1) r.generators.push_back({j, c[0].shifted_z(j)});
  r.count = static_cast<int>(r.generators.size());
  r.projective_dimension = r.count - 1;
  return r;
}

cohomology_basis formal_sections(const bundle_transition& b, int n, truncation_policy t, basis_options opts) {
  if (b.work().u_deg_max < n) throw precondition_error("bundle was built with a u-degree cap below the neighborhood");
  const int j = b.extension ? std::abs(b.extension->j) : 0;
  const int reach = j + std::abs(b.base().k1) * n + 2;
  truncation_policy start = t;
  start.z_min = std::min(start.z_min, -reach);
  start.z_max = std::max(start.z_max, reach);
  return h0_basis([&](truncation_policy) { return b; }, start, n, opts);
}

int formal_section_dimension(const bundle_transition& b, int n, truncation_policy t, basis_options opts) {
  return formal_sections(b, n, t, opts).dimension();
}

std::string_view iso_verdict_name(iso_verdict v) {
  switch (v) {
    case iso_verdict::not_isomorphic: return "NotIsomorphic";
    case iso_verdict::isomorphic: return "Isomorphic";
    case iso_verdict::possibly_isomorphic: return "PossiblyIsomorphic";
  }
  return "PossiblyIsomorphic";
}

iso_report distinguish_bundles(const bundle_transition& a, const bundle_transition& b, truncation_policy t,
                               basis_options opts) {
  iso_report r;
  if (a.rank() != b.rank()) {
    r.verdict = iso_verdict::not_isomorphic;
    r.reason = "ranks differ";
    return r;
  }
  if (a.rank() == 2) {
    try {
      const auto sa = splitting_type_on_line(a);
      const auto sb = splitting_type_on_line(b);
      if (!(sa == sb)) {
        r.verdict = iso_verdict::not_isomorphic;
        r.reason = "splitting types (" + std::to_string(sa.a1) + ", " + std::to_string(sa.a2) + ") and (" +
                   std::to_string(sb.a1) + ", " + std::to_string(sb.a2) + ") differ";
        return r;
      }
    } catch (const precondition_error&) {
      // restriction to the line is not a monomial-determinant matrix; skip this invariant
    }
  }
  const int top = std::min({2, a.work().u_deg_max, b.work().u_deg_max});
  for (int n = 0; n <= top; ++n) {
    const int da = formal_section_dimension(a, n, t, opts);
    const int db = formal_section_dimension(b, n, t, opts);
    if (da != db) {
      r.verdict = iso_verdict::not_isomorphic;
      r.reason = "sections on the order-" + std::to_string(n) + " neighborhood: " + std::to_string(da) + " vs " +
                 std::to_string(db);
      return r;
    }
  }
  if (a.matrix() == b.matrix()) {
    r.verdict = iso_verdict::isomorphic;
    r.reason = "identical transition matrices";
    return r;
  }
  if (a.extension && b.extension && a.extension->j == b.extension->j) {
    auto d = shift_equivalent(*a.extension, *b.extension, a.base(), t);
    if (d.equivalent) {
      r.verdict = iso_verdict::isomorphic;
      r.reason = "extension classes are shift-equivalent";
      r.witness = d.witness;
      return r;
    }
  }
  r.verdict = iso_verdict::possibly_isomorphic;
  r.reason = "all computed invariants agree";
  return r;
}

}  // namespace wk

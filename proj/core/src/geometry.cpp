#include "wk/geometry.hpp"

#include <algorithm>
#include <cstdlib>

#include "wk/echelon.hpp"

namespace wk {

threefold_spec threefold_spec::w2_tau(const multi_series& tau) {
  threefold_spec s = w(2);
  s.perturbations.push_back({slot::v1, tau.shifted_z(1)});
  return s;
}

threefold_spec threefold_spec::w2_y(int y) {
  truncation_policy p = truncation_policy::wide(std::max(y, 6));
  return w2_tau(multi_series::monomial(chart::u, {0, 0, y}, rational(1), p));
}

multi_series threefold_spec::slot_perturbation(slot s, truncation_policy p) const {
  multi_series sum(chart::u, p);
  for (const auto& pert : perturbations)
    if (pert.where == s) sum += pert.term.with_policy(p);
  return sum;
}

bool threefold_spec::preserves_line() const {
  return std::all_of(perturbations.begin(), perturbations.end(),
                     [](const perturbation& p) { return p.term.is_zero() || p.term.min_u_degree() >= 1; });
}

int threefold_spec::z_spread() const {
  int spread = std::max({std::abs(k1), std::abs(k2), 2});
  for (const auto& p : perturbations)
    if (!p.term.is_zero()) spread = std::max({spread, std::abs(p.term.min_z()), std::abs(p.term.max_z())});
  return spread;
}

const substitution_rule& transition::inverse_rule() const {
  if (const auto* r = std::get_if<substitution_rule>(&inverse)) return *r;
  throw inversion_failure("transition is not invertible: " + std::get<not_invertible>(inverse).reason);
}

std::string transition::failure_reason() const {
  if (const auto* n = std::get_if<not_invertible>(&inverse)) return n->reason;
  return {};
}

transition build_transition(const threefold_spec& spec, truncation_policy work) {
  const multi_series z = multi_series::var(chart::u, variable::z, work);
  const multi_series u1 = multi_series::var(chart::u, variable::u1, work);
  const multi_series u2 = multi_series::var(chart::u, variable::u2, work);
  const multi_series p1 = spec.slot_perturbation(slot::v1, work);
  const multi_series p2 = spec.slot_perturbation(slot::v2, work);

  transition t;
  t.forward.target = chart::u;
  t.forward.z = multi_series::monomial(chart::u, {-1, 0, 0}, rational(1), work);
  t.forward.u1 = multi_series::monomial(chart::u, {spec.k1, 1, 0}, rational(1), work) + p1;
  t.forward.u2 = multi_series::monomial(chart::u, {spec.k2, 0, 1}, rational(1), work) + p2;
  (void)z;
  (void)u1;
  (void)u2;

  if (p1.depends_on(variable::u1)) {
    t.inverse = not_invertible{"v1 perturbation depends on u1: " + p1.render()};
    return t;
  }
  if (p2.depends_on(variable::u2)) {
    t.inverse = not_invertible{"v2 perturbation depends on u2: " + p2.render()};
    return t;
  }
  if (p1.depends_on(variable::u2) && p2.depends_on(variable::u1)) {
    t.inverse = not_invertible{"v1 and v2 perturbations depend on each other's fiber variable"};
    return t;
  }

  const multi_series xi = multi_series::var(chart::v, variable::z, work);
  const multi_series v1 = multi_series::var(chart::v, variable::u1, work);
  const multi_series v2 = multi_series::var(chart::v, variable::u2, work);
  substitution_rule inv;
  inv.target = chart::v;
  inv.z = multi_series::monomial(chart::v, {-1, 0, 0}, rational(1), work);
  const multi_series xi_k1 = multi_series::monomial(chart::v, {spec.k1, 0, 0}, rational(1), work);
  const multi_series xi_k2 = multi_series::monomial(chart::v, {spec.k2, 0, 0}, rational(1), work);
  (void)xi;

  // u = xi^k (v - P), solving first the slot whose perturbation is free of fiber variables.
  if (!p2.depends_on(variable::u1)) {
    inv.u2 = xi_k2 * (v2 - substitute(p2, inv, work));
    inv.u1 = xi_k1 * (v1 - substitute(p1, inv, work));
  } else {
    inv.u1 = xi_k1 * (v1 - substitute(p1, inv, work));
    inv.u2 = xi_k2 * (v2 - substitute(p2, inv, work));
  }
  t.inverse = std::move(inv);
  return t;
}

series_matrix matrix_product(const series_matrix& a, const series_matrix& b, int n) {
  series_matrix c;
  c.reserve(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      multi_series s(a[0].tag(), a[0].policy());
      for (int k = 0; k < n; ++k) s += a[static_cast<std::size_t>(i * n + k)] * b[static_cast<std::size_t>(k * n + j)];
      c.push_back(std::move(s));
    }
  return c;
}

namespace {

series_matrix minor_of(const series_matrix& m, int n, int row, int col) {
  series_matrix r;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != row && j != col) r.push_back(m[static_cast<std::size_t>(i * n + j)]);
  return r;
}

}  // namespace

multi_series determinant(const series_matrix& m, int n) {
  if (n == 1) return m[0];
  if (n == 2) return m[0] * m[3] - m[1] * m[2];
  multi_series det(m[0].tag(), m[0].policy());
  for (int j = 0; j < n; ++j) {
    const auto& a = m[static_cast<std::size_t>(j)];
    if (a.is_zero()) continue;
    multi_series term = a * determinant(minor_of(m, n, 0, j), n - 1);
    if (j % 2) det -= term;
    else det += term;
  }
  return det;
}

std::optional<series_matrix> matrix_inverse(const series_matrix& m, int n) {
  auto det_inv = invert_unit(determinant(m, n));
  if (!det_inv) return std::nullopt;
  series_matrix inv(static_cast<std::size_t>(n * n));
  if (n == 1) {
    inv[0] = *det_inv;
    return inv;
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      multi_series cof = determinant(minor_of(m, n, j, i), n - 1);
      if ((i + j) % 2) cof = -cof;
      inv[static_cast<std::size_t>(i * n + j)] = cof * *det_inv;
    }
  return inv;
}

bundle_transition::bundle_transition(threefold_spec base, series_matrix matrix, truncation_policy work,
                                     std::string kind)
    : base_(std::move(base)), matrix_(std::move(matrix)), work_(work), kind_(std::move(kind)) {
  std::size_t n = 0;
  while (n * n < matrix_.size()) ++n;
  if (n * n != matrix_.size() || n == 0) throw precondition_error("bundle matrix is not square");
  rank_ = static_cast<int>(n);
  for (auto& e : matrix_) e = e.with_policy(work_);
  auto inv = matrix_inverse(matrix_, rank_);
  if (!inv) throw inversion_failure("determinant " + determinant(matrix_, rank_).render() + " is not a unit");
  inverse_ = std::move(*inv);
  transition_ = build_transition(base_, work_);
}

bundle_transition::bundle_transition(threefold_spec base, series_matrix matrix, series_matrix inverse,
                                     truncation_policy work, std::string kind)
    : base_(std::move(base)),
      matrix_(std::move(matrix)),
      inverse_(std::move(inverse)),
      work_(work),
      kind_(std::move(kind)) {
  std::size_t n = 0;
  while (n * n < matrix_.size()) ++n;
  if (n * n != matrix_.size() || inverse_.size() != matrix_.size()) throw precondition_error("bundle matrix is not square");
  rank_ = static_cast<int>(n);
  transition_ = build_transition(base_, work_);
}

bundle_transition tangent_jacobian(const threefold_spec& spec, truncation_policy work) {
  // Differentiation lowers u-degree by one, so the gluing needs one extra degree.
  truncation_policy wider = work;
  ++wider.u_deg_max;
  const transition t = build_transition(spec, wider);
  series_matrix j;
  for (const auto* row : {&t.forward.z, &t.forward.u1, &t.forward.u2})
    for (variable v : {variable::z, variable::u1, variable::u2})
      j.push_back(partial_derivative(**row, v).with_policy(work));
  return bundle_transition(spec, std::move(j), work, "tangent");
}

bundle_transition extension_to_transition(const extension_class& e, const threefold_spec& base,
                                          truncation_policy work) {
  series_matrix m{multi_series::monomial(chart::u, {e.j, 0, 0}, rational(1), work), e.p.with_policy(work),
                  multi_series(chart::u, work), multi_series::monomial(chart::u, {-e.j, 0, 0}, rational(1), work)};
  bundle_transition b(base, std::move(m), work, "extension");
  b.extension = extension_class{e.j, e.p.with_policy(work)};
  return b;
}

bundle_transition line_bundle_transition(int d, const threefold_spec& base, truncation_policy work) {
  return bundle_transition(base, {multi_series::monomial(chart::u, {-d, 0, 0}, rational(1), work)}, work,
                           "line(" + std::to_string(d) + ")");
}

bundle_transition endomorphism_transition(const bundle_transition& b) {
  const int r = b.rank();
  const int n = r * r;
  series_matrix fwd(static_cast<std::size_t>(n * n)), bwd(static_cast<std::size_t>(n * n));
  // (M g M^-1)_ij = sum_ab M_ia g_ab Minv_bj ; inverse map g -> M^-1 g M.
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      for (int a = 0; a < r; ++a)
        for (int c = 0; c < r; ++c) {
          const auto idx = static_cast<std::size_t>((i * r + j) * n + (a * r + c));
          fwd[idx] = b.at(i, a) * b.inverse_at(c, j);
          bwd[idx] = b.inverse_at(i, a) * b.at(c, j);
        }
  return bundle_transition(b.base(), std::move(fwd), std::move(bwd), b.work(), "end(" + b.kind() + ")");
}

namespace {

using zrow = std::pair<int, int>;  // (matrix row, z exponent)

// dim { s in C[z]^2, deg s <= max_deg : z^t M s has no positive z powers }
int twisted_section_count(const series_matrix& m, int t, int max_deg) {
  sparse_echelon<zrow> ech;
  int id = 0;
  int rank = 0;
  for (int c = 0; c < 2; ++c)
    for (int d = 0; d <= max_deg; ++d, ++id) {
      sparse_vector<zrow> col;
      for (int r = 0; r < 2; ++r)
        for (const auto& [e, coeff] : m[static_cast<std::size_t>(r * 2 + c)].terms()) {
          const int zexp = e.z + d + t;
          if (zexp > 0) col[{r, zexp}] += coeff;
        }
      std::erase_if(col, [](const auto& kv) { return sgn(kv.second) == 0; });
      if (!col.empty() && !ech.insert(id, std::move(col)).residual.empty()) ++rank;
    }
  return 2 * (max_deg + 1) - rank;
}

}  // namespace

std::pair<int, int> birkhoff_exponents(const series_matrix& m) {
  if (m.size() != 4) throw precondition_error("birkhoff_exponents needs a 2x2 matrix");
  int lo = 0, hi = 0;
  bool any = false;
  for (const auto& e : m) {
    if (e.is_zero()) continue;
    if (e.max_u_degree() > 0) throw precondition_error("birkhoff_exponents needs a u-free matrix");
    lo = any ? std::min(lo, e.min_z()) : e.min_z();
    hi = any ? std::max(hi, e.max_z()) : e.max_z();
    any = true;
  }
  const multi_series det = determinant(m, 2);
  if (!det.is_monomial() || det.terms().begin()->first.u_degree() != 0)
    throw precondition_error("determinant " + det.render() + " is not a unit monomial");
  const int det_exp = det.terms().begin()->first.z;
  const int t_lo = -hi - 2;
  const int t_hi = -lo + 2;
  const int max_deg = 3 * (hi - lo) + 8;
  // drop(t) = h(t) - h(t+1) = #{i : a_i <= -t}
  std::vector<int> h;
  for (int t = t_lo; t <= t_hi + 1; ++t) h.push_back(twisted_section_count(m, t, max_deg));
  int a_min = 0, a_max = 0;
  bool found_min = false, found_max = false;
  for (int t = t_hi; t >= t_lo; --t) {
    const int drop = h[static_cast<std::size_t>(t - t_lo)] - h[static_cast<std::size_t>(t - t_lo + 1)];
    if (!found_min && drop >= 1) {
      a_min = -t;
      found_min = true;
    }
    if (!found_max && drop >= 2) {
      a_max = -t;
      found_max = true;
    }
  }
  if (!found_min || !found_max || a_min + a_max != det_exp)
    throw precondition_error("could not determine splitting exponents");
  return {a_max, a_min};
}

std::pair<int, int> conormal_on_line(const threefold_spec& spec) {
  if (!spec.preserves_line()) throw line_not_preserved("a perturbation does not vanish on u1 = u2 = 0");
  const truncation_policy work = truncation_policy::wide(2);
  const transition t = build_transition(spec, work);
  // fiber block of the Jacobian restricted to u = 0
  series_matrix block;
  for (const auto* row : {&t.forward.u1, &t.forward.u2})
    for (variable v : {variable::u1, variable::u2}) block.push_back(partial_derivative(**row, v).u_degree_part(0));
  auto inv = matrix_inverse(block, 2);
  if (!inv) throw inversion_failure("fiber Jacobian is not invertible on the line");
  // conormal transition is the inverse transpose
  series_matrix cot{(*inv)[0], (*inv)[2], (*inv)[1], (*inv)[3]};
  for (auto& e : cot) e = e.u_degree_part(0);
  auto [a1, a2] = birkhoff_exponents(cot);
  // O(d) has transition z^-d
  return {-a2, -a1};
}

}  // namespace wk

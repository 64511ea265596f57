#include "wk/cech.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace wk {

std::string render_cochain(const cochain& c) {
  std::string out = "[";
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) out += ", ";
    out += c[i].render();
  }
  return out + "]";
}

bool cochain_is_zero(const cochain& c) {
  return std::all_of(c.begin(), c.end(), [](const multi_series& s) { return s.is_zero(); });
}

std::string obstruction_certificate::render() const {
  std::string out = "component " + std::to_string(component + 1) + ": monomial " + render_monomial(monomial, chart::v);
  if (reachers.empty()) return out + " is reached by no unknown";
  out += " is reached only by";
  for (const auto& r : reachers) out += " " + r;
  return out;
}

namespace {

using row_key = cech_engine::row_key;

void accumulate_principal(sparse_vector<row_key>& out, int row, const multi_series& a, const multi_series& b,
                          int max_deg, const rational& scale = rational(1)) {
  for (const auto& [ea, ca] : a.terms())
    for (const auto& [eb, cb] : b.terms()) {
      const exponent e = ea + eb;
      if (e.z >= 0 || e.u_degree() > max_deg) continue;
      auto [it, inserted] = out.try_emplace(row_key{row, e}, ca * cb * scale);
      if (!inserted) {
        it->second += ca * cb * scale;
        if (sgn(it->second) == 0) out.erase(it);
      }
    }
}

multi_series principal_u(const multi_series& s) { return holomorphic_split(s).principal; }

}  // namespace

cech_engine::cech_engine(const bundle_transition& b, truncation_policy window)
    : bundle_(b), window_(window), work_(truncation_policy::wide(window.u_deg_max)) {
  if (!window.valid()) throw precondition_error("invalid truncation window");
  if (b.work().u_deg_max < window.u_deg_max)
    throw precondition_error("bundle was built with a smaller u-degree cap than the window");
  inverse_ = b.base_transition().inverse_rule();
  forward_ = b.base_transition().forward;
  const int n = b.rank();
  rm_.reserve(static_cast<std::size_t>(n * n));
  for (const auto& m : b.matrix()) rm_.push_back(substitute(m.with_policy(work_), inverse_, work_));
}

const multi_series& cech_engine::rewritten_monomial(const exponent& e) const {
  if (auto it = monomial_cache_.find(e); it != monomial_cache_.end()) return it->second;
  multi_series r;
  if (e == exponent{0, 1, 0}) {
    r = substitute(multi_series::var(chart::u, variable::u1, work_), inverse_, work_);
  } else if (e == exponent{0, 0, 1}) {
    r = substitute(multi_series::var(chart::u, variable::u2, work_), inverse_, work_);
  } else if (e.u1 > 0) {
    r = rewritten_monomial({e.z, e.u1 - 1, e.u2}) * rewritten_monomial({0, 1, 0});
  } else if (e.u2 > 0) {
    r = rewritten_monomial({e.z, 0, e.u2 - 1}) * rewritten_monomial({0, 0, 1});
  } else {
    r = substitute(multi_series::monomial(chart::u, e, rational(1), work_), inverse_, work_);
  }
  return monomial_cache_.emplace(e, std::move(r)).first->second;
}

cochain cech_engine::zero_cochain(chart c) const {
  return cochain(static_cast<std::size_t>(rank()), multi_series(c, work_));
}

cochain cech_engine::rewrite_to_v(const cochain& c) const {
  const int n = rank();
  if (static_cast<int>(c.size()) != n) throw precondition_error("cochain length does not match bundle rank");
  cochain out = zero_cochain(chart::v);
  for (int k = 0; k < n; ++k) {
    if (c[static_cast<std::size_t>(k)].is_zero()) continue;
    const multi_series rk = substitute(c[static_cast<std::size_t>(k)].with_policy(work_), inverse_, work_);
    for (int r = 0; r < n; ++r) out[static_cast<std::size_t>(r)] += rm_[static_cast<std::size_t>(r * n + k)] * rk;
  }
  return out;
}

cochain cech_engine::rewrite_to_u(const cochain& beta) const {
  const int n = rank();
  if (static_cast<int>(beta.size()) != n) throw precondition_error("cochain length does not match bundle rank");
  cochain out = zero_cochain(chart::u);
  for (int k = 0; k < n; ++k) {
    if (beta[static_cast<std::size_t>(k)].is_zero()) continue;
    const multi_series fk = substitute(beta[static_cast<std::size_t>(k)].with_policy(work_), forward_, work_);
    for (int r = 0; r < n; ++r)
      out[static_cast<std::size_t>(r)] += bundle_.inverse_at(r, k).with_policy(work_) * fk;
  }
  return out;
}

sparse_vector<row_key> cech_engine::principal_rows(const cochain& v_frame, int max_deg) const {
  sparse_vector<row_key> out;
  for (std::size_t r = 0; r < v_frame.size(); ++r)
    for (const auto& [e, c] : v_frame[r].terms())
      if (e.z < 0 && e.u_degree() <= max_deg) out.emplace(row_key{static_cast<int>(r), e}, c);
  return out;
}

sparse_vector<row_key> cech_engine::principal_image(const cochain& c) const {
  const int n = rank();
  sparse_vector<row_key> out;
  for (int k = 0; k < n; ++k) {
    if (c[static_cast<std::size_t>(k)].is_zero()) continue;
    const multi_series rk = substitute(c[static_cast<std::size_t>(k)].with_policy(work_), inverse_, work_);
    for (int r = 0; r < n; ++r)
      accumulate_principal(out, r, rm_[static_cast<std::size_t>(r * n + k)], rk, window_.u_deg_max);
  }
  return out;
}

sparse_vector<row_key> cech_engine::principal_image_of_monomial(int component, const exponent& e) const {
  const int n = rank();
  sparse_vector<row_key> out;
  const multi_series& rm = rewritten_monomial(e);
  for (int r = 0; r < n; ++r)
    accumulate_principal(out, r, rm_[static_cast<std::size_t>(r * n + component)], rm, window_.u_deg_max);
  return out;
}

std::vector<cech_engine::column> cech_engine::alpha_columns(int min_deg, int max_deg, int z_max) const {
  std::vector<column> cols;
  for (int d = min_deg; d <= max_deg; ++d)
    for (int i = d; i >= 0; --i)
      for (int z = 0; z <= z_max; ++z)
        for (int c = 0; c < rank(); ++c) cols.push_back({c, {z, i, d - i}});
  return cols;
}

std::vector<std::pair<int, exponent>> cech_engine::principal_candidates(int exact_degree) const {
  std::vector<std::pair<int, exponent>> out;
  const int lo = exact_degree < 0 ? 0 : exact_degree;
  const int hi = exact_degree < 0 ? window_.u_deg_max : exact_degree;
  for (int d = lo; d <= hi; ++d)
    for (int i = 0; i <= d; ++i)
      for (int z = -1; z >= window_.z_min; --z)
        for (int c = 0; c < rank(); ++c) out.push_back({c, {z, i, d - i}});
  return out;
}

cochain cech_engine::monomial_cochain(int component, const exponent& e, const rational& c) const {
  cochain out = zero_cochain();
  out[static_cast<std::size_t>(component)].add_term(e, c);
  return out;
}

std::string cech_engine::column_name(const column& col) const {
  const std::string m = render_monomial(col.e, chart::u);
  return "alpha" + std::to_string(col.component + 1) + "[" + (m.empty() ? "1" : m) + "]";
}

const cech_engine::solve_state& cech_engine::state() const {
  if (state_) return *state_;
  auto st = std::make_shared<solve_state>();
  st->columns = alpha_columns(0, window_.u_deg_max, window_.z_max);
  st->alpha_count = st->columns.size();
  for (std::size_t id = 0; id < st->alpha_count; ++id) {
    auto img = principal_image_of_monomial(st->columns[id].component, st->columns[id].e);
    if (!img.empty()) (void)st->alpha.insert(static_cast<int>(id), std::move(img));
  }
  st->full = st->alpha;
  for (const auto& [c, e] : principal_candidates()) {
    const int id = static_cast<int>(st->columns.size());
    st->columns.push_back({c, e});
    auto img = principal_image_of_monomial(c, e);
    if (img.empty()) continue;
    if (!st->full.insert(id, std::move(img)).residual.empty()) st->class_ids.push_back(id);
  }
  state_ = std::move(st);
  return *state_;
}

coboundary_decision cech_engine::is_coboundary(const cochain& sigma) const {
  if (static_cast<int>(sigma.size()) != rank()) throw precondition_error("cochain length does not match bundle rank");
  const auto& st = state();
  const auto target = principal_image(sigma);
  auto red = st.alpha.reduce(target);
  coboundary_decision out;
  if (red.residual.empty()) {
    coboundary_witness w;
    w.alpha = zero_cochain();
    for (const auto& [id, c] : red.comb) {
      const auto& col = st.columns[static_cast<std::size_t>(id)];
      w.alpha[static_cast<std::size_t>(col.component)].add_term(col.e, -c);
    }
    cochain diff = zero_cochain();
    for (std::size_t i = 0; i < sigma.size(); ++i) diff[i] = sigma[i].with_policy(work_) - w.alpha[i];
    cochain image = rewrite_to_v(diff);
    w.beta.reserve(image.size());
    for (auto& s : image) w.beta.push_back(holomorphic_split(s).hol);
    if (!check_witness(sigma, w))
      throw window_too_small("coboundary witness does not recompose at u-degree " +
                             std::to_string(window_.u_deg_max) + "; enlarge the window");
    out.coboundary = true;
    out.witness = std::move(w);
    return out;
  }

  // Unknowns just beyond the z window could still close the gap.
  sparse_echelon<row_key> probe = st.alpha;
  const int extra = std::max(4, window_.z_max);
  int id = static_cast<int>(st.columns.size());
  for (int d = 0; d <= window_.u_deg_max; ++d)
    for (int i = 0; i <= d; ++i)
      for (int z = window_.z_max + 1; z <= window_.z_max + extra; ++z)
        for (int c = 0; c < rank(); ++c) {
          auto img = principal_image_of_monomial(c, {z, i, d - i});
          if (!img.empty()) (void)probe.insert(id++, std::move(img));
        }
  if (probe.reduce(target).residual.empty())
    throw window_too_small("coboundary needs U-holomorphic terms beyond z^" + std::to_string(window_.z_max) +
                           "; enlarge the window");

  obstruction_certificate cert;
  const row_key lead = red.residual.begin()->first;
  cert.component = lead.first;
  cert.monomial = lead.second;
  for (std::size_t i = 0; i < st.alpha_count; ++i) {
    const auto& col = st.columns[i];
    if (principal_image_of_monomial(col.component, col.e).count(lead)) cert.reachers.push_back(column_name(col));
  }
  out.certificate = std::move(cert);
  return out;
}

cochain cech_engine::recompose(const coboundary_witness& w) const {
  cochain back = rewrite_to_u(w.beta);
  for (std::size_t i = 0; i < back.size(); ++i) back[i] += w.alpha[i].with_policy(work_);
  return back;
}

bool cech_engine::check_witness(const cochain& sigma, const coboundary_witness& w) const {
  const auto n = static_cast<std::size_t>(rank());
  if (sigma.size() != n || w.alpha.size() != n || w.beta.size() != n) return false;
  for (std::size_t i = 0; i < n; ++i) {
    if (w.alpha[i].tag() != chart::u || !is_holomorphic(w.alpha[i])) return false;
    if (w.beta[i].tag() != chart::v || !is_holomorphic(w.beta[i])) return false;
  }
  const cochain back = recompose(w);
  for (std::size_t i = 0; i < n; ++i)
    if (!(back[i] == sigma[i].with_policy(work_))) return false;
  return true;
}

cochain cech_engine::reduce_representative(const cochain& sigma) const {
  if (static_cast<int>(sigma.size()) != rank()) throw precondition_error("cochain length does not match bundle rank");
  cochain cur = sigma;
  for (auto& s : cur) s = principal_u(s.with_policy(work_));
  for (int iter = 0; iter < 64; ++iter) {
    cochain image = rewrite_to_v(cur);
    for (auto& s : image) s = holomorphic_split(s).principal;
    cochain next = rewrite_to_u(image);
    for (auto& s : next) s = principal_u(s);
    if (next == cur) break;
    cur = std::move(next);
  }
  return cur;
}

cochain cech_engine::normal_form(const cochain& sigma) const {
  if (static_cast<int>(sigma.size()) != rank()) throw precondition_error("cochain length does not match bundle rank");
  const auto& st = state();
  auto red = st.full.reduce(principal_image(sigma));
  if (!red.residual.empty()) return reduce_representative(sigma);
  cochain out = zero_cochain();
  for (const auto& [id, c] : red.comb) {
    if (static_cast<std::size_t>(id) < st.alpha_count) continue;
    const auto& col = st.columns[static_cast<std::size_t>(id)];
    out[static_cast<std::size_t>(col.component)].add_term(col.e, -c);
  }
  return out;
}

std::optional<cech_engine::affine_solution> cech_engine::solve_affine(const cochain& sigma,
                                                                      const cochain& other) const {
  const auto& st = state();
  sparse_echelon<row_key> ech = st.alpha;
  const int extra_id = -1;
  (void)ech.insert(extra_id, principal_image(other));
  auto red = ech.reduce(principal_image(sigma));
  if (!red.residual.empty()) return std::nullopt;
  affine_solution sol;
  sol.lambda = 0;
  cochain alpha = zero_cochain();
  for (const auto& [id, c] : red.comb) {
    if (id == extra_id) {
      sol.lambda = -c;
      continue;
    }
    const auto& col = st.columns[static_cast<std::size_t>(id)];
    alpha[static_cast<std::size_t>(col.component)].add_term(col.e, -c);
  }
  cochain diff = zero_cochain();
  for (std::size_t i = 0; i < sigma.size(); ++i)
    diff[i] = sigma[i].with_policy(work_) - other[i].with_policy(work_).scaled(sol.lambda) - alpha[i];
  sol.witness.alpha = std::move(alpha);
  for (auto& s : rewrite_to_v(diff)) sol.witness.beta.push_back(holomorphic_split(s).hol);
  cochain combined = zero_cochain();
  for (std::size_t i = 0; i < sigma.size(); ++i)
    combined[i] = sigma[i].with_policy(work_) - other[i].with_policy(work_).scaled(sol.lambda);
  if (!check_witness(combined, sol.witness))
    throw window_too_small("witness does not recompose within the window; enlarge the window");
  return sol;
}

std::vector<cochain> cech_engine::h1_classes() const {
  const auto& st = state();
  std::vector<cochain> out;
  for (int id : st.class_ids) {
    const auto& col = st.columns[static_cast<std::size_t>(id)];
    out.push_back(monomial_cochain(col.component, col.e));
  }
  return out;
}

std::vector<cochain> cech_engine::h0_sections(int n) const {
  if (n > window_.u_deg_max) throw precondition_error("neighborhood order exceeds the window");
  sparse_echelon<row_key> ech;
  const auto cols = alpha_columns(0, n, window_.z_max);
  std::vector<cochain> out;
  for (std::size_t id = 0; id < cols.size(); ++id) {
    auto img = principal_image_of_monomial(cols[id].component, cols[id].e);
    std::erase_if(img, [n](const auto& kv) { return kv.first.second.u_degree() > n; });
    auto red = ech.insert(static_cast<int>(id), std::move(img));
    if (!red.residual.empty()) continue;
    cochain section = zero_cochain();
    for (const auto& [j, c] : red.comb) {
      const auto& col = cols[static_cast<std::size_t>(j)];
      section[static_cast<std::size_t>(col.component)].add_term(col.e, c);
    }
    out.push_back(std::move(section));
  }
  return out;
}

bool cech_engine::extends_section(const cochain& s0, int n0, int n) const {
  if (n > window_.u_deg_max) throw precondition_error("neighborhood order exceeds the window");
  auto target = principal_image(s0);
  std::erase_if(target, [n](const auto& kv) { return kv.first.second.u_degree() > n; });
  sparse_echelon<row_key> ech;
  const auto cols = alpha_columns(n0 + 1, n, window_.z_max);
  for (std::size_t id = 0; id < cols.size(); ++id) {
    auto img = principal_image_of_monomial(cols[id].component, cols[id].e);
    std::erase_if(img, [n](const auto& kv) { return kv.first.second.u_degree() > n; });
    if (!img.empty()) (void)ech.insert(static_cast<int>(id), std::move(img));
  }
  return ech.reduce(std::move(target)).residual.empty();
}

coboundary_decision is_coboundary(const bundle_transition& b, const cochain& sigma, truncation_policy t) {
  return cech_engine(b, t).is_coboundary(sigma);
}

cochain reduce_representative(const bundle_transition& b, const cochain& sigma, truncation_policy t) {
  return cech_engine(b, t).reduce_representative(sigma);
}

cochain normal_form(const bundle_transition& b, const cochain& sigma, truncation_policy t) {
  return cech_engine(b, t).normal_form(sigma);
}

}  // namespace wk

#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "suite.hpp"
#include "wk/bundles.hpp"
#include "wk/cech.hpp"
#include "wk/deform.hpp"

namespace wk::suite::detail {

inline truncation_policy wide(const suite_config& cfg) { return truncation_policy::wide(cfg.window.u_deg_max); }

inline basis_options options(const suite_config& cfg, bool pattern = false) {
  basis_options o;
  o.growth_cap = cfg.growth_cap;
  o.search_pattern = pattern;
  return o;
}

inline multi_series u_series(std::string_view text, const suite_config& cfg) {
  return parse_series(text, chart::u, wide(cfg));
}

inline multi_series v_series(std::string_view text, const suite_config& cfg) {
  return parse_series(text, chart::v, wide(cfg));
}

inline multi_series u_mono(int z, int i, int s, const suite_config& cfg, const rational& c = rational(1)) {
  return multi_series::monomial(chart::u, {z, i, s}, c, wide(cfg));
}

/// Cochain of the given rank with a single nonzero component.
inline cochain single(int rank, int component, const multi_series& m) {
  cochain c(static_cast<std::size_t>(rank), multi_series(m.tag(), m.policy()));
  c[static_cast<std::size_t>(component)] = m;
  return c;
}

inline cech_engine tangent_engine(const threefold_spec& spec, const suite_config& cfg) {
  return cech_engine(tangent_jacobian(spec, wide(cfg)), cfg.window);
}

inline bundle_factory tangent_factory(const threefold_spec& spec) {
  return [spec](truncation_policy w) { return tangent_jacobian(spec, truncation_policy::wide(w.u_deg_max)); };
}

/// Whether the normal forms of the given cochains are linearly independent.
inline bool independent_classes(const cech_engine& engine, const std::vector<cochain>& classes) {
  using key = std::pair<int, exponent>;
  sparse_echelon<key> ech;
  int id = 0;
  for (const auto& c : classes) {
    sparse_vector<key> v;
    const cochain nf = engine.normal_form(c);
    for (std::size_t i = 0; i < nf.size(); ++i)
      for (const auto& [e, x] : nf[i].terms()) v[{static_cast<int>(i), e}] = x;
    if (ech.insert(id++, v).residual.empty()) return false;
  }
  return true;
}

inline std::string join(const std::vector<std::string>& parts, std::string_view sep = ", ") {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

inline std::string sorted_set(std::vector<std::string> items) {
  std::sort(items.begin(), items.end());
  items.erase(std::unique(items.begin(), items.end()), items.end());
  return "{" + join(items, "; ") + "}";
}

}  // namespace wk::suite::detail

#include <algorithm>
#include <map>
#include <set>

#include "wk/cech.hpp"

namespace wk {

namespace {

truncation_policy grow(truncation_policy w) {
  w.z_min = std::min(2 * w.z_min, -4);
  w.z_max = std::max(2 * w.z_max, 4);
  return w;
}

std::vector<std::string> rendered(const std::vector<cochain>& cs) {
  std::vector<std::string> out;
  out.reserve(cs.size());
  for (const auto& c : cs) out.push_back(render_cochain(c));
  return out;
}

template <class Run>
std::pair<std::vector<cochain>, truncation_policy> stabilise(Run run, truncation_policy t, int growth_cap,
                                                             const char* what) {
  truncation_policy w = t;
  std::vector<cochain> cur = run(w);
  int stable = 0;
  int growths = 0;
  while (stable < 2) {
    if (growths >= growth_cap)
      throw window_too_small(std::string(what) + " did not stabilise within " + std::to_string(growth_cap) +
                             " window growths");
    const truncation_policy next_w = grow(w);
    std::vector<cochain> next = run(next_w);
    ++growths;
    stable = rendered(next) == rendered(cur) ? stable + 1 : 0;
    cur = std::move(next);
    w = next_w;
  }
  return {std::move(cur), w};
}

std::string family_member(const exponent& e, int rank, int component) {
  std::string mono;
  if (e.z != 0) mono = e.z == 1 ? "z" : "z^" + std::to_string(e.z);
  if (e.u1 != 0) {
    if (!mono.empty()) mono += ' ';
    mono += e.u1 == 1 ? "u1" : "u1^" + std::to_string(e.u1);
  }
  if (!mono.empty()) mono += ' ';
  mono += "u2^s";
  std::string out = "[";
  for (int i = 0; i < rank; ++i) {
    if (i) out += ", ";
    out += i == component ? mono : "0";
  }
  return out + "]";
}

}  // namespace

std::optional<std::string> detect_family_pattern(const std::vector<std::vector<cochain>>& per_cap) {
  if (per_cap.size() < 3) return std::nullopt;
  using key = std::tuple<int, int, int>;  // component, z, u1
  std::vector<std::map<key, std::set<int>>> groups(per_cap.size());
  int rank = 0;
  for (std::size_t cap = 0; cap < per_cap.size(); ++cap)
    for (const auto& c : per_cap[cap]) {
      rank = static_cast<int>(c.size());
      int comp = -1;
      for (int i = 0; i < rank; ++i)
        if (!c[static_cast<std::size_t>(i)].is_zero()) {
          if (comp >= 0) return std::nullopt;
          comp = i;
        }
      if (comp < 0 || !c[static_cast<std::size_t>(comp)].is_monomial()) return std::nullopt;
      const exponent e = c[static_cast<std::size_t>(comp)].terms().begin()->first;
      groups[cap][{comp, e.z, e.u1}].insert(e.u2);
    }
  std::vector<std::string> families;
  for (const auto& [k, exps] : groups.back()) {
    bool growing = true;
    for (std::size_t cap = 0; cap + 1 < groups.size(); ++cap) {
      auto it = groups[cap].find(k);
      if (it == groups[cap].end() || it->second.empty()) {
        growing = false;
        break;
      }
      const auto& a = it->second;
      const auto jt = groups[cap + 1].find(k);
      if (jt == groups[cap + 1].end()) return std::nullopt;
      const auto& b = jt->second;
      const bool contiguous = *a.rbegin() - *a.begin() + 1 == static_cast<int>(a.size()) &&
                              *b.rbegin() - *b.begin() + 1 == static_cast<int>(b.size());
      if (!contiguous || *a.begin() != *b.begin() || *b.rbegin() != *a.rbegin() + 1) growing = false;
    }
    if (!growing) continue;
    const auto [comp, z, u1] = k;
    families.push_back(family_member({z, u1, 0}, rank, comp) + " (s >= " + std::to_string(*exps.begin()) + ")");
  }
  if (families.empty()) return std::nullopt;
  std::string out;
  for (const auto& f : families) out += (out.empty() ? "" : "; ") + f;
  return out;
}

cohomology_basis h1_basis(const bundle_factory& make, truncation_policy t, basis_options opts) {
  auto run = [&](truncation_policy w) { return cech_engine(make(w), w).h1_classes(); };
  auto [classes, w] = stabilise(run, t, opts.growth_cap, "H1 basis");
  cohomology_basis out;
  out.classes = std::move(classes);
  out.certified_window = w;
  out.stabilized = true;
  if (opts.search_pattern && w.u_deg_max >= 2) {
    std::vector<std::vector<cochain>> per_cap;
    for (int d = w.u_deg_max - 2; d < w.u_deg_max; ++d) {
      truncation_policy wd = w;
      wd.u_deg_max = d;
      per_cap.push_back(run(wd));
    }
    per_cap.push_back(out.classes);
    for (const auto& c : per_cap) out.per_cap_dimensions.push_back(static_cast<int>(c.size()));
    out.family_pattern = detect_family_pattern(per_cap);
  }
  return out;
}

cohomology_basis h0_basis(const bundle_factory& make, truncation_policy t, std::optional<int> neighborhood,
                          basis_options opts) {
  const int n = neighborhood.value_or(t.u_deg_max);
  truncation_policy start = t;
  start.u_deg_max = n;
  auto run = [&](truncation_policy w) { return cech_engine(make(w), w).h0_sections(n); };
  auto [sections, w] = stabilise(run, start, opts.growth_cap, "H0 basis");
  cohomology_basis out;
  out.classes = std::move(sections);
  out.certified_window = w;
  out.stabilized = true;
  return out;
}

ext_basis ext_group_basis(int j1, int j2, const threefold_spec& spec, truncation_policy t, basis_options opts) {
  const int d = j1 - j2;
  auto make = [&](truncation_policy w) {
    return line_bundle_transition(d, spec, truncation_policy::wide(w.u_deg_max));
  };
  ext_basis out;
  out.h1 = h1_basis(make, t, opts);
  for (const auto& c : out.h1.classes) out.classes.push_back({-j1, c[0].shifted_z(-j1)});
  return out;
}

std::vector<multi_series> ext_generator_monomials(int j, const threefold_spec& spec, truncation_policy t) {
  const cech_engine engine(line_bundle_transition(-2 * j, spec, truncation_policy::wide(t.u_deg_max)), t);
  std::vector<multi_series> out;
  for (const auto& [c, e] : engine.principal_candidates()) {
    cochain m = engine.zero_cochain();
    m[0].add_term(e, rational(1));
    if (cochain_is_zero(engine.reduce_representative(m))) continue;
    out.push_back(multi_series::monomial(chart::u, {e.z + j, e.u1, e.u2}, rational(1), truncation_policy::wide(t.u_deg_max)));
  }
  return out;
}

}  // namespace wk

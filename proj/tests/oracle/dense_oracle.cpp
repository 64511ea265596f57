#include "dense_oracle.hpp"

#include <cstdlib>
#include <stdexcept>
#include <utility>

namespace oracle {

poly term(int e, int a, int b, const q& c) {
  poly p;
  if (c != 0) p[{e, a, b}] = c;
  return p;
}

void accumulate(poly& into, const poly& p, const q& scale) {
  for (const auto& [m, c] : p) {
    q& slot = into[m];
    slot += scale * c;
    if (slot == 0) into.erase(m);
  }
}

poly mul(const poly& p, const poly& r, int deg_cap) {
  poly out;
  for (const auto& [m1, c1] : p)
    for (const auto& [m2, c2] : r) {
      const mono m{m1.e + m2.e, m1.a + m2.a, m1.b + m2.b};
      if (m.a + m.b > deg_cap) continue;
      q& slot = out[m];
      slot += c1 * c2;
      if (slot == 0) out.erase(m);
    }
  return out;
}

namespace {

poly power(const poly& p, int n, int deg_cap) {
  poly out = term(0, 0, 0);
  for (int i = 0; i < n; ++i) out = mul(out, p, deg_cap);
  return out;
}

}  // namespace

poly rewrite(const poly& p, const chart_change& c, int deg_cap) {
  poly out;
  for (const auto& [m, coeff] : p) {
    poly t = term(-m.e, 0, 0, coeff);
    t = mul(t, power(c.x, m.a, deg_cap), deg_cap);
    t = mul(t, power(c.y, m.b, deg_cap), deg_cap);
    accumulate(out, t);
  }
  return out;
}

gluing split_wk(int k) {
  gluing g;
  g.to_v = {term(k, 1, 0), term(2 - k, 0, 1)};
  g.to_u = {term(k, 1, 0), term(2 - k, 0, 1)};
  return g;
}

std::size_t rank(std::vector<std::vector<q>> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[r]);
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      if (rows[i][c] == 0) continue;
      const q f = rows[i][c] / rows[r][c];
      for (std::size_t j = c; j < cols; ++j) rows[i][j] -= f * rows[r][j];
    }
    ++r;
  }
  return r;
}

namespace {

using key = std::pair<int, mono>;
using sparse = std::map<key, q>;

std::size_t sparse_rank(const std::vector<sparse>& vectors) {
  std::map<key, std::size_t> index;
  for (const auto& v : vectors)
    for (const auto& [k, c] : v) index.emplace(k, 0);
  std::size_t i = 0;
  for (auto& [k, pos] : index) pos = i++;
  std::vector<std::vector<q>> rows;
  for (const auto& v : vectors) {
    std::vector<q> row(index.size());
    for (const auto& [k, c] : v) row[index.at(k)] = c;
    rows.push_back(std::move(row));
  }
  return rank(std::move(rows));
}

/// Negative-w part on V, modulo fibre degree > n, of M * s.
sparse obstruction(const std::vector<poly>& m, int r, const gluing& g, const std::vector<poly>& s, int n) {
  sparse out;
  for (int row = 0; row < r; ++row) {
    poly image;
    for (int c = 0; c < r; ++c)
      accumulate(image, mul(m[static_cast<std::size_t>(row * r + c)], s[static_cast<std::size_t>(c)], n));
    for (const auto& [mo, coeff] : rewrite(image, g.to_v, n))
      if (mo.e < 0) out[{row, mo}] = coeff;
  }
  return out;
}

std::vector<sparse> unknown_images(const std::vector<poly>& m, int r, const gluing& g, int lo, int hi, int n,
                                   int zmax) {
  std::vector<sparse> out;
  for (int c = 0; c < r; ++c)
    for (int d = lo; d <= hi; ++d)
      for (int a = 0; a <= d; ++a)
        for (int e = 0; e <= zmax; ++e) {
          std::vector<poly> s(static_cast<std::size_t>(r));
          s[static_cast<std::size_t>(c)] = term(e, a, d - a);
          out.push_back(obstruction(m, r, g, s, n));
        }
  return out;
}

constexpr int start_bound = 8;
constexpr int bound_step = 6;
constexpr int bound_limit = 80;

template <class F>
auto stable_in_bound(F&& at) {
  auto prev = at(start_bound);
  for (int z = start_bound + bound_step; z <= bound_limit; z += bound_step) {
    auto cur = at(z);
    if (cur == prev) return cur;
    prev = std::move(cur);
  }
  throw std::runtime_error("oracle: count not stable in the z bound");
}

}  // namespace

int section_count(const std::vector<poly>& m, int r, const gluing& g, int n) {
  return stable_in_bound([&](int zmax) {
    const auto images = unknown_images(m, r, g, 0, n, n, zmax);
    return static_cast<int>(images.size() - sparse_rank(images));
  });
}

bool section_extends(const std::vector<poly>& m, int r, const gluing& g, const std::vector<poly>& s0, int n0,
                     int n) {
  return stable_in_bound([&](int zmax) {
    auto images = unknown_images(m, r, g, n0 + 1, n, n, zmax);
    const std::size_t base = sparse_rank(images);
    images.push_back(obstruction(m, r, g, s0, n));
    return sparse_rank(images) == base;
  });
}

int bundle_h1(const std::vector<poly>& minv, int r, const gluing& g, int cap) {
  return stable_in_bound([&](int zspan) {
    // Principal U cochains (z^e with -zspan <= e <= -1) modulo the principal
    // parts of V-holomorphic cochains written in the U frame.
    std::vector<sparse> images;
    const int bmax = 2 * zspan + 4 * (cap + 1) + 8;
    for (int c = 0; c < r; ++c)
      for (int deg = 0; deg <= cap; ++deg)
        for (int a = 0; a <= deg; ++a)
          for (int b = 0; b <= bmax; ++b) {
            const poly beta = rewrite(term(b, a, deg - a), g.to_u, cap);
            sparse v;
            for (int row = 0; row < r; ++row)
              for (const auto& [mo, coeff] : mul(minv[static_cast<std::size_t>(row * r + c)], beta, cap))
                if (mo.e < 0 && mo.e >= -zspan) v[{row, mo}] = coeff;
            if (!v.empty()) images.push_back(std::move(v));
          }
    int total = 0;
    for (int deg = 0; deg <= cap; ++deg) total += (deg + 1) * zspan * r;
    return total - static_cast<int>(sparse_rank(images));
  });
}

int line_h1(int d, const gluing& g, int cap) { return bundle_h1({term(d, 0, 0)}, 1, g, cap); }

}  // namespace oracle

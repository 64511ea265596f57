#pragma once

// Brute-force reference computations for the test suite. Everything here is
// written from scratch: its own polynomial type, its own chart change and a
// dense Gaussian elimination. Nothing from wkcore is used.

#include <compare>
#include <map>
#include <vector>

#include <gmpxx.h>

namespace oracle {

using q = mpq_class;

/// z^e x^a y^b where (x, y) are the fibre coordinates of the chart.
struct mono {
  int e = 0;
  int a = 0;
  int b = 0;
  friend auto operator<=>(const mono&, const mono&) = default;
};

using poly = std::map<mono, q>;

poly term(int e, int a, int b, const q& c = 1);
poly mul(const poly& p, const poly& r, int deg_cap);
void accumulate(poly& into, const poly& p, const q& scale = 1);

/// Rewrites a polynomial to the other chart: z^e -> w^-e and the fibre
/// coordinates by the given expressions in the other chart.
struct chart_change {
  poly x;
  poly y;
};
poly rewrite(const poly& p, const chart_change& c, int deg_cap);

struct gluing {
  chart_change to_v;  // v1, v2 in U variables
  chart_change to_u;  // u1, u2 in V variables
};

/// W_k with the split gluing v1 = z^k u1, v2 = z^(2-k) u2.
gluing split_wk(int k);

std::size_t rank(std::vector<std::vector<q>> rows);

/// Sections of the bundle with V-frame = M * U-frame over the N-th formal
/// neighbourhood. M is row-major with entries in U variables. Throws
/// std::runtime_error when the count is not stable in the z bound.
int section_count(const std::vector<poly>& m, int rank, const gluing& g, int n);

/// Whether the U-chart section s0 (u-degree <= n0) can be corrected in
/// u-degrees n0 + 1 .. n to a section on the n-th neighbourhood.
bool section_extends(const std::vector<poly>& m, int rank, const gluing& g, const std::vector<poly>& s0, int n0,
                     int n);

/// dim H^1 modulo u-degree > cap of the bundle with V-frame = M * U-frame,
/// given M^-1 (row-major, U variables).
int bundle_h1(const std::vector<poly>& minv, int rank, const gluing& g, int cap);

/// dim H^1(O(d)) modulo u-degree > cap, where O(d) has transition z^-d.
int line_h1(int d, const gluing& g, int cap);

}  // namespace oracle

#pragma once

// Exact sparse Laurent series in z with polynomial dependence on u1, u2.
//
// A multi_series is tagged with the chart it lives on. The algebra is the
// same on both charts; the tag only selects variable names when rendering
// (z, u1, u2 on U and xi, v1, v2 on V) and guards against mixing charts.

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace wk {

using rational = mpq_class;

std::string render_rational(const rational& q);
rational parse_rational(std::string_view text);

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct chart_mismatch : error {
  using error::error;
};
struct non_invertible_substitution : error {
  using error::error;
};
struct parse_error : error {
  using error::error;
};

enum class chart : std::uint8_t { u, v };

std::string_view chart_name(chart c);

enum class variable : std::uint8_t { z, u1, u2 };

/// Exponent of z^z u1^u1 u2^u2. Ordered canonically by
/// (u1 + u2, u1, u2, z), which keeps formal-neighbourhood orders together.
struct exponent {
  int z = 0;
  int u1 = 0;
  int u2 = 0;

  [[nodiscard]] int u_degree() const noexcept { return u1 + u2; }
  [[nodiscard]] int of(variable v) const noexcept;

  friend bool operator==(const exponent&, const exponent&) = default;
  friend std::strong_ordering operator<=>(const exponent& a, const exponent& b) noexcept {
    if (auto c = a.u_degree() <=> b.u_degree(); c != 0) return c;
    if (auto c = a.u1 <=> b.u1; c != 0) return c;
    if (auto c = a.u2 <=> b.u2; c != 0) return c;
    return a.z <=> b.z;
  }
  friend exponent operator+(const exponent& a, const exponent& b) noexcept {
    return {a.z + b.z, a.u1 + b.u1, a.u2 + b.u2};
  }
};

/// Monomial box in which results are certified.
struct truncation_policy {
  int u_deg_max = 6;
  int z_min = -12;
  int z_max = 12;

  [[nodiscard]] bool contains(const exponent& e) const noexcept {
    return e.u1 >= 0 && e.u2 >= 0 && e.u_degree() <= u_deg_max && e.z >= z_min && e.z <= z_max;
  }
  [[nodiscard]] truncation_policy intersect(const truncation_policy& o) const noexcept;
  [[nodiscard]] bool valid() const noexcept { return u_deg_max >= 0 && z_min <= 0 && z_max >= 0; }

  /// Effectively unbounded z range at the given u-degree cap.
  static truncation_policy wide(int u_deg_max) noexcept { return {u_deg_max, -(1 << 20), 1 << 20}; }

  friend bool operator==(const truncation_policy&, const truncation_policy&) = default;
};

class multi_series {
 public:
  using term_map = std::map<exponent, rational>;

  multi_series() = default;
  explicit multi_series(chart c, truncation_policy p = truncation_policy::wide(6)) : chart_{c}, policy_{p} {}

  static multi_series constant(chart c, const rational& value, truncation_policy p);
  static multi_series monomial(chart c, exponent e, const rational& coeff, truncation_policy p);
  static multi_series var(chart c, variable v, truncation_policy p);

  [[nodiscard]] chart tag() const noexcept { return chart_; }
  [[nodiscard]] const truncation_policy& policy() const noexcept { return policy_; }
  [[nodiscard]] const term_map& terms() const noexcept { return terms_; }
  [[nodiscard]] bool is_zero() const noexcept { return terms_.empty(); }
  [[nodiscard]] std::size_t size() const noexcept { return terms_.size(); }
  /// True when some operation producing this value discarded a monomial outside the window.
  [[nodiscard]] bool touched_boundary() const noexcept { return touched_; }
  [[nodiscard]] rational coefficient(const exponent& e) const;
  [[nodiscard]] bool is_monomial() const noexcept { return terms_.size() == 1; }
  [[nodiscard]] int min_u_degree() const noexcept;
  [[nodiscard]] int max_u_degree() const noexcept;
  [[nodiscard]] int min_z() const noexcept;
  [[nodiscard]] int max_z() const noexcept;
  [[nodiscard]] bool depends_on(variable v) const noexcept;

  /// Adds c * x^e; terms outside the window are dropped and flagged.
  void add_term(const exponent& e, const rational& c);
  void mark_touched() noexcept { touched_ = true; }

  [[nodiscard]] multi_series retagged(chart c) const;
  [[nodiscard]] multi_series with_policy(truncation_policy p) const;
  /// Terms whose u-degree equals d.
  [[nodiscard]] multi_series u_degree_part(int d) const;
  [[nodiscard]] multi_series pow(int n) const;
  [[nodiscard]] multi_series scaled(const rational& c) const;
  [[nodiscard]] multi_series shifted_z(int dz) const;

  multi_series& operator+=(const multi_series& o);
  multi_series& operator-=(const multi_series& o);
  friend multi_series operator+(multi_series a, const multi_series& b) { return a += b; }
  friend multi_series operator-(multi_series a, const multi_series& b) { return a -= b; }
  friend multi_series operator-(const multi_series& a) { return a.scaled(rational(-1)); }
  friend multi_series operator*(const multi_series& a, const multi_series& b);
  friend multi_series operator*(const rational& c, const multi_series& a) { return a.scaled(c); }

  /// Equality of term maps and chart; policies and boundary flags are ignored.
  friend bool operator==(const multi_series& a, const multi_series& b) {
    return a.chart_ == b.chart_ && a.terms_ == b.terms_;
  }

  [[nodiscard]] std::string render() const;

 private:
  chart chart_ = chart::u;
  term_map terms_;
  truncation_policy policy_ = truncation_policy::wide(6);
  bool touched_ = false;
};

multi_series add(const multi_series& a, const multi_series& b);
multi_series mul(const multi_series& a, const multi_series& b);

/// Inverse of a series c * m * (1 + h) where m is a u-free monomial and every
/// term of h has positive u-degree; the geometric series stops at the u cap.
std::optional<multi_series> invert_unit(const multi_series& a);

/// Assignment of the three variables of a source chart to series on a target chart.
struct substitution_rule {
  chart target = chart::v;
  std::optional<multi_series> z;
  std::optional<multi_series> u1;
  std::optional<multi_series> u2;

  [[nodiscard]] const std::optional<multi_series>& of(variable v) const;
  [[nodiscard]] bool complete() const noexcept { return z && u1 && u2; }
};

multi_series substitute(const multi_series& a, const substitution_rule& rules);
/// Same as substitute but the result is truncated to the given policy.
multi_series substitute(const multi_series& a, const substitution_rule& rules, truncation_policy out);

multi_series partial_derivative(const multi_series& a, variable v);

bool is_holomorphic(const multi_series& a);

struct holomorphic_parts {
  multi_series hol;
  multi_series principal;
};
holomorphic_parts holomorphic_split(const multi_series& a);

/// Parses the canonical rendering, e.g. "z^2 u1 - 1/2 z^-1 u2^3".
/// Accepts both U names (z, u1, u2) and V names (xi, v1, v2).
multi_series parse_series(std::string_view text, chart c, truncation_policy p);

std::string render_monomial(const exponent& e, chart c);

}  // namespace wk

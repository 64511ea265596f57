#include "wk/series.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <sstream>

namespace wk {

std::string render_rational(const rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw parse_error("empty rational");
  if (s.front() == '+') s.erase(0, 1);
  rational q;
  if (q.set_str(s, 10) != 0 || q.get_den() == 0) throw parse_error("bad rational '" + std::string(text) + "'");
  q.canonicalize();
  return q;
}

std::string_view chart_name(chart c) { return c == chart::u ? "U" : "V"; }

int exponent::of(variable v) const noexcept {
  switch (v) {
    case variable::z: return z;
    case variable::u1: return u1;
    case variable::u2: return u2;
  }
  return 0;
}

truncation_policy truncation_policy::intersect(const truncation_policy& o) const noexcept {
  return {std::min(u_deg_max, o.u_deg_max), std::max(z_min, o.z_min), std::min(z_max, o.z_max)};
}

multi_series multi_series::constant(chart c, const rational& value, truncation_policy p) {
  return monomial(c, {}, value, p);
}

multi_series multi_series::monomial(chart c, exponent e, const rational& coeff, truncation_policy p) {
  multi_series s(c, p);
  s.add_term(e, coeff);
  return s;
}

multi_series multi_series::var(chart c, variable v, truncation_policy p) {
  exponent e;
  switch (v) {
    case variable::z: e.z = 1; break;
    case variable::u1: e.u1 = 1; break;
    case variable::u2: e.u2 = 1; break;
  }
  return monomial(c, e, rational(1), p);
}

rational multi_series::coefficient(const exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? rational(0) : it->second;
}

int multi_series::min_u_degree() const noexcept {
  int d = std::numeric_limits<int>::max();
  for (const auto& [e, c] : terms_) d = std::min(d, e.u_degree());
  return d;
}

int multi_series::max_u_degree() const noexcept {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, e.u_degree());
  return d;
}

int multi_series::min_z() const noexcept {
  int d = std::numeric_limits<int>::max();
  for (const auto& [e, c] : terms_) d = std::min(d, e.z);
  return d;
}

int multi_series::max_z() const noexcept {
  int d = std::numeric_limits<int>::min();
  for (const auto& [e, c] : terms_) d = std::max(d, e.z);
  return d;
}

bool multi_series::depends_on(variable v) const noexcept {
  return std::any_of(terms_.begin(), terms_.end(), [v](const auto& t) { return t.first.of(v) != 0; });
}

void multi_series::add_term(const exponent& e, const rational& c) {
  if (sgn(c) == 0) return;
  if (!policy_.contains(e)) {
    touched_ = true;
    return;
  }
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

multi_series multi_series::retagged(chart c) const {
  multi_series r = *this;
  r.chart_ = c;
  return r;
}

multi_series multi_series::with_policy(truncation_policy p) const {
  multi_series r(chart_, p);
  r.touched_ = touched_;
  for (const auto& [e, c] : terms_) r.add_term(e, c);
  return r;
}

multi_series multi_series::u_degree_part(int d) const {
  multi_series r(chart_, policy_);
  for (const auto& [e, c] : terms_)
    if (e.u_degree() == d) r.terms_.emplace(e, c);
  return r;
}

multi_series multi_series::scaled(const rational& c) const {
  multi_series r(chart_, policy_);
  r.touched_ = touched_;
  if (sgn(c) == 0) return r;
  for (const auto& [e, x] : terms_) r.terms_.emplace(e, x * c);
  return r;
}

multi_series multi_series::shifted_z(int dz) const {
  multi_series r(chart_, policy_);
  r.touched_ = touched_;
  for (const auto& [e, c] : terms_) r.add_term({e.z + dz, e.u1, e.u2}, c);
  return r;
}

multi_series multi_series::pow(int n) const {
  if (n < 0) {
    auto inv = invert_unit(*this);
    if (!inv) throw non_invertible_substitution("series " + render() + " is not a unit within the window");
    return inv->pow(-n);
  }
  multi_series result = constant(chart_, rational(1), policy_);
  multi_series base = *this;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

multi_series& multi_series::operator+=(const multi_series& o) {
  if (chart_ != o.chart_) throw chart_mismatch("cannot add series on charts U and V");
  if (!(policy_ == o.policy_)) {
    truncation_policy p = policy_.intersect(o.policy_);
    *this = with_policy(p);
  }
  touched_ = touched_ || o.touched_;
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

multi_series& multi_series::operator-=(const multi_series& o) { return *this += -o; }

multi_series operator*(const multi_series& a, const multi_series& b) {
  if (a.chart_ != b.chart_) throw chart_mismatch("cannot multiply series on charts U and V");
  multi_series r(a.chart_, a.policy_ == b.policy_ ? a.policy_ : a.policy_.intersect(b.policy_));
  r.touched_ = a.touched_ || b.touched_;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
  return r;
}

multi_series add(const multi_series& a, const multi_series& b) { return a + b; }
multi_series mul(const multi_series& a, const multi_series& b) { return a * b; }

std::optional<multi_series> invert_unit(const multi_series& a) {
  if (a.is_zero()) return std::nullopt;
  // Leading part: the u-free terms. Exactly one is allowed.
  std::optional<std::pair<exponent, rational>> lead;
  for (const auto& [e, c] : a.terms()) {
    if (e.u_degree() != 0) continue;
    if (lead) return std::nullopt;
    lead = std::make_pair(e, c);
  }
  if (!lead) return std::nullopt;
  const truncation_policy p = a.policy();
  const rational inv_c = 1 / lead->second;
  const exponent inv_e{-lead->first.z, 0, 0};
  multi_series lead_inv = multi_series::monomial(a.tag(), inv_e, inv_c, p);
  // a = c m (1 + h), h = (a - c m) / (c m)
  multi_series h(a.tag(), p);
  for (const auto& [e, c] : a.terms())
    if (e.u_degree() != 0) h.add_term(e + inv_e, c * inv_c);
  if (h.is_zero()) return lead_inv;
  // 1/(1+h) = sum (-h)^n, h has u-degree >= 1 so n <= u_deg_max suffices.
  multi_series sum = multi_series::constant(a.tag(), rational(1), p);
  multi_series term = sum;
  const multi_series neg_h = -h;
  for (int n = 1; n <= p.u_deg_max; ++n) {
    term = term * neg_h;
    if (term.is_zero()) break;
    sum += term;
  }
  return lead_inv * sum;
}

const std::optional<multi_series>& substitution_rule::of(variable v) const {
  switch (v) {
    case variable::z: return z;
    case variable::u1: return u1;
    case variable::u2: return u2;
  }
  return z;
}

namespace {

class power_cache {
 public:
  power_cache(const std::optional<multi_series>& base, truncation_policy p, chart c)
      : base_(base), policy_(p), chart_(c) {}

  const multi_series& get(int n) {
    if (n >= 0) {
      if (pos_.empty()) pos_.push_back(multi_series::constant(chart_, rational(1), policy_));
      while (static_cast<int>(pos_.size()) <= n) pos_.push_back(pos_.back() * base_->with_policy(policy_));
      return pos_[static_cast<std::size_t>(n)];
    }
    if (neg_.empty()) {
      auto inv = invert_unit(base_->with_policy(policy_));
      if (!inv) throw non_invertible_substitution("negative power of non-unit rule " + base_->render());
      neg_.push_back(multi_series::constant(chart_, rational(1), policy_));
      inv_ = std::move(*inv);
    }
    while (static_cast<int>(neg_.size()) <= -n) neg_.push_back(neg_.back() * inv_);
    return neg_[static_cast<std::size_t>(-n)];
  }

 private:
  const std::optional<multi_series>& base_;
  truncation_policy policy_;
  chart chart_;
  std::vector<multi_series> pos_;
  std::vector<multi_series> neg_;
  multi_series inv_;
};

}  // namespace

multi_series substitute(const multi_series& a, const substitution_rule& rules, truncation_policy out) {
  for (variable v : {variable::z, variable::u1, variable::u2}) {
    const auto& r = rules.of(v);
    if (a.depends_on(v) && !r) throw non_invertible_substitution("substitution rule missing for a variable");
    if (r && r->tag() != rules.target) throw chart_mismatch("substitution rule on the wrong chart");
  }
  power_cache zp(rules.z, out, rules.target), u1p(rules.u1, out, rules.target), u2p(rules.u2, out, rules.target);
  multi_series result(rules.target, out);
  bool touched = a.touched_boundary();
  for (const auto& [e, c] : a.terms()) {
    multi_series t = multi_series::constant(rules.target, c, out);
    if (e.z != 0) t = t * zp.get(e.z);
    if (e.u1 != 0) t = t * u1p.get(e.u1);
    if (e.u2 != 0) t = t * u2p.get(e.u2);
    touched = touched || t.touched_boundary();
    result += t;
  }
  if (touched) result.mark_touched();
  return result;
}

multi_series substitute(const multi_series& a, const substitution_rule& rules) {
  truncation_policy out = a.policy();
  for (variable v : {variable::z, variable::u1, variable::u2})
    if (const auto& r = rules.of(v)) out = out.intersect(r->policy());
  return substitute(a, rules, out);
}

multi_series partial_derivative(const multi_series& a, variable v) {
  multi_series r(a.tag(), a.policy());
  if (a.touched_boundary()) r.mark_touched();
  for (const auto& [e, c] : a.terms()) {
    const int n = e.of(v);
    if (n == 0) continue;
    exponent d = e;
    switch (v) {
      case variable::z: d.z -= 1; break;
      case variable::u1: d.u1 -= 1; break;
      case variable::u2: d.u2 -= 1; break;
    }
    r.add_term(d, c * n);
  }
  return r;
}

bool is_holomorphic(const multi_series& a) {
  return std::all_of(a.terms().begin(), a.terms().end(), [](const auto& t) { return t.first.z >= 0; });
}

holomorphic_parts holomorphic_split(const multi_series& a) {
  holomorphic_parts parts{multi_series(a.tag(), a.policy()), multi_series(a.tag(), a.policy())};
  for (const auto& [e, c] : a.terms()) (e.z >= 0 ? parts.hol : parts.principal).add_term(e, c);
  return parts;
}

std::string render_monomial(const exponent& e, chart c) {
  const char* names[3] = {c == chart::u ? "z" : "xi", c == chart::u ? "u1" : "v1", c == chart::u ? "u2" : "v2"};
  const int exps[3] = {e.z, e.u1, e.u2};
  std::string out;
  for (int i = 0; i < 3; ++i) {
    if (exps[i] == 0) continue;
    if (!out.empty()) out += ' ';
    out += names[i];
    if (exps[i] != 1) out += "^" + std::to_string(exps[i]);
  }
  return out;
}

std::string multi_series::render() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    const bool negative = sgn(c) < 0;
    const rational mag = negative ? rational(-c) : c;
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    const std::string mono = render_monomial(e, chart_);
    if (mono.empty()) {
      out += render_rational(mag);
    } else {
      if (mag != 1) out += render_rational(mag) + " ";
      out += mono;
    }
  }
  return out;
}

namespace {

struct series_parser {
  std::string_view s;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && (std::isspace(static_cast<unsigned char>(s[pos])) || s[pos] == '*')) ++pos;
  }
  bool at_end() {
    skip_ws();
    return pos >= s.size();
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw parse_error("series parse error at offset " + std::to_string(pos) + ": " + what + " in '" + std::string(s) + "'");
  }
  std::string read_while(auto pred) {
    std::size_t start = pos;
    while (pos < s.size() && pred(s[pos])) ++pos;
    return std::string(s.substr(start, pos - start));
  }
  int read_int() {
    skip_ws();
    std::string sign;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) sign = std::string(1, s[pos++]);
    std::string digits = read_while([](char ch) { return std::isdigit(static_cast<unsigned char>(ch)) != 0; });
    if (digits.empty()) fail("expected integer exponent");
    return std::stoi(sign + digits);
  }
};

}  // namespace

multi_series parse_series(std::string_view text, chart c, truncation_policy p) {
  series_parser ps{text};
  multi_series out(c, p);
  if (ps.at_end()) ps.fail("empty series");
  bool first = true;
  while (!ps.at_end()) {
    int sign = 1;
    ps.skip_ws();
    if (ps.s[ps.pos] == '+' || ps.s[ps.pos] == '-') {
      sign = ps.s[ps.pos] == '-' ? -1 : 1;
      ++ps.pos;
    } else if (!first) {
      ps.fail("expected '+' or '-' between terms");
    }
    first = false;
    ps.skip_ws();
    rational coeff(sign);
    bool has_number = false;
    if (ps.pos < ps.s.size() && std::isdigit(static_cast<unsigned char>(ps.s[ps.pos]))) {
      std::string num = ps.read_while([](char ch) { return std::isdigit(static_cast<unsigned char>(ch)) || ch == '/'; });
      coeff *= parse_rational(num);
      has_number = true;
    }
    exponent e;
    bool any_factor = false;
    for (;;) {
      ps.skip_ws();
      if (ps.pos >= ps.s.size() || ps.s[ps.pos] == '+' || ps.s[ps.pos] == '-') break;
      std::string name = ps.read_while([](char ch) { return std::isalnum(static_cast<unsigned char>(ch)) != 0; });
      if (name.empty()) ps.fail("unexpected character");
      int power = 1;
      ps.skip_ws();
      if (ps.pos < ps.s.size() && ps.s[ps.pos] == '^') {
        ++ps.pos;
        power = ps.read_int();
      }
      if (name == "z" || name == "xi") {
        e.z += power;
      } else if (name == "u1" || name == "v1") {
        e.u1 += power;
      } else if (name == "u2" || name == "v2") {
        e.u2 += power;
      } else if (std::all_of(name.begin(), name.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
        coeff *= parse_rational(name);
        if (power != 1) ps.fail("exponent on a coefficient");
      } else {
        ps.fail("unknown variable '" + name + "'");
      }
      any_factor = true;
    }
    if (!any_factor && !has_number) ps.fail("dangling sign");
    if (e.u1 < 0 || e.u2 < 0) ps.fail("negative fiber exponent");
    out.add_term(e, coeff);
  }
  return out;
}

}  // namespace wk

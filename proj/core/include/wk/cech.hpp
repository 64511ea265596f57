#pragma once

// Cech cohomology of locally free sheaves on the two-chart cover.
//
// A 1-cochain is a vector of U-chart series (in the U frame). It is a
// coboundary when sigma = alpha + M^-1 beta with alpha holomorphic on U and
// beta holomorphic on V; equivalently the rewrite of M (sigma - alpha) to V
// coordinates has no negative powers of xi. All questions reduce to sparse
// linear algebra on principal parts in V.

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "wk/echelon.hpp"
#include "wk/geometry.hpp"

namespace wk {

struct window_too_small : error {
  using error::error;
};

using cochain = std::vector<multi_series>;

std::string render_cochain(const cochain& c);
bool cochain_is_zero(const cochain& c);

struct coboundary_witness {
  cochain alpha;  // U chart, U frame
  cochain beta;   // V chart, V frame
};

struct obstruction_certificate {
  int component = 0;
  exponent monomial;                  // V-chart monomial that cannot be matched
  std::vector<std::string> reachers;  // unknowns whose images touch it
  [[nodiscard]] std::string render() const;
};

struct coboundary_decision {
  bool coboundary = false;
  std::optional<coboundary_witness> witness;
  std::optional<obstruction_certificate> certificate;
};

struct cohomology_basis {
  std::vector<cochain> classes;
  truncation_policy certified_window;
  std::optional<std::string> family_pattern;
  std::vector<int> per_cap_dimensions;  // dimension at caps D-2, D-1, D when a pattern was searched
  bool stabilized = false;

  [[nodiscard]] int dimension() const noexcept { return static_cast<int>(classes.size()); }
};

/// Linear-algebra engine for one bundle at one window.
class cech_engine {
 public:
  cech_engine(const bundle_transition& b, truncation_policy window);

  [[nodiscard]] const truncation_policy& window() const noexcept { return window_; }
  [[nodiscard]] int rank() const noexcept { return bundle_.rank(); }

  /// Principal part on V (negative xi powers, v-degree within the window) of R(M c).
  using row_key = std::pair<int, exponent>;
  [[nodiscard]] sparse_vector<row_key> principal_image(const cochain& c) const;
  [[nodiscard]] sparse_vector<row_key> principal_image_of_monomial(int component, const exponent& e) const;

  [[nodiscard]] coboundary_decision is_coboundary(const cochain& sigma) const;
  /// alpha + M^-1 beta, rewritten to U, restricted to the window's u-degree.
  [[nodiscard]] cochain recompose(const coboundary_witness& w) const;
  [[nodiscard]] bool check_witness(const cochain& sigma, const coboundary_witness& w) const;

  /// Alternately drops the U-holomorphic part and the V-holomorphic part of the
  /// image until nothing changes.
  [[nodiscard]] cochain reduce_representative(const cochain& sigma) const;
  /// The unique combination of h1_classes() cohomologous to sigma; falls back to
  /// reduce_representative when sigma leaves the candidate box.
  [[nodiscard]] cochain normal_form(const cochain& sigma) const;

  /// Finds lambda with sigma - lambda * other a coboundary, preferring lambda != 0.
  struct affine_solution {
    rational lambda;
    coboundary_witness witness;  // for sigma - lambda * other
  };
  [[nodiscard]] std::optional<affine_solution> solve_affine(const cochain& sigma, const cochain& other) const;

  /// Classes of H^1 within the window, in normal form.
  [[nodiscard]] std::vector<cochain> h1_classes() const;
  /// Candidate principal monomials in the canonical enumeration order.
  [[nodiscard]] std::vector<std::pair<int, exponent>> principal_candidates(int exact_degree = -1) const;
  /// Sections over U (u-degree <= n) whose image is V-holomorphic modulo u-degree n + 1.
  [[nodiscard]] std::vector<cochain> h0_sections(int n) const;
  /// Whether a section given on u-degree <= n0 admits a correction of u-degree in (n0, n] to a section on order n.
  [[nodiscard]] bool extends_section(const cochain& s0, int n0, int n) const;

  [[nodiscard]] cochain rewrite_to_v(const cochain& c) const;   // R(M c), V frame
  [[nodiscard]] cochain rewrite_to_u(const cochain& beta) const;  // M^-1 F(beta), U frame
  [[nodiscard]] cochain zero_cochain(chart c = chart::u) const;
  [[nodiscard]] const bundle_transition& bundle() const noexcept { return bundle_; }

 private:
  struct column {
    int component;
    exponent e;
  };
  const multi_series& rewritten_monomial(const exponent& e) const;
  std::vector<column> alpha_columns(int min_deg, int max_deg, int z_max) const;
  sparse_vector<row_key> principal_rows(const cochain& v_frame, int max_deg) const;
  cochain monomial_cochain(int component, const exponent& e, const rational& c = rational(1)) const;
  std::string column_name(const column& col) const;

  struct solve_state {
    sparse_echelon<row_key> alpha;  // images of U-holomorphic unknowns
    sparse_echelon<row_key> full;   // the same followed by principal candidates
    std::vector<column> columns;    // alpha columns first, then candidates
    std::size_t alpha_count = 0;
    std::vector<int> class_ids;
  };
  const solve_state& state() const;

  bundle_transition bundle_;
  truncation_policy window_;
  truncation_policy work_;
  substitution_rule inverse_;
  substitution_rule forward_;
  series_matrix rm_;  // R(M) entries on V
  mutable std::map<exponent, multi_series> monomial_cache_;
  mutable std::shared_ptr<solve_state> state_;
};

coboundary_decision is_coboundary(const bundle_transition& b, const cochain& sigma, truncation_policy t);
cochain reduce_representative(const bundle_transition& b, const cochain& sigma, truncation_policy t);
cochain normal_form(const bundle_transition& b, const cochain& sigma, truncation_policy t);

struct basis_options {
  int growth_cap = 4;
  bool search_pattern = true;
};

/// H^1 basis with z-window stabilisation. The bundle is rebuilt per window by `make`.
using bundle_factory = std::function<bundle_transition(truncation_policy)>;
cohomology_basis h1_basis(const bundle_factory& make, truncation_policy t, basis_options opts = {});
cohomology_basis h0_basis(const bundle_factory& make, truncation_policy t, std::optional<int> neighborhood,
                          basis_options opts = {});

/// Extension classes of Ext^1(O(j2), O(j1)) through H^1(O(j1 - j2)); p = z^-j1 sigma.
struct ext_basis {
  cohomology_basis h1;
  std::vector<extension_class> classes;
};
ext_basis ext_group_basis(int j1, int j2, const threefold_spec& spec, truncation_policy t, basis_options opts = {});

/// Principal monomials m of O(-2j) with nonzero reduction, mapped to p = z^j m.
std::vector<multi_series> ext_generator_monomials(int j, const threefold_spec& spec, truncation_policy t);

/// Human-readable description of a family of classes indexed by s.
std::optional<std::string> detect_family_pattern(const std::vector<std::vector<cochain>>& per_cap);

}  // namespace wk

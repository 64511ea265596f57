#pragma once

// Rank-2 bundle toolkit: splitting on the zero section, shift-equivalence of
// extension classes, first-neighbourhood moduli and section counting on
// formal neighbourhoods.

#include <optional>
#include <string>
#include <vector>

#include "wk/cech.hpp"

namespace wk {

struct splitting_type {
  int a1 = 0;
  int a2 = 0;
  friend bool operator==(const splitting_type&, const splitting_type&) = default;
};

/// Restricts to u1 = u2 = 0 and returns the diagonal z-exponents, largest first.
splitting_type splitting_type_on_line(const bundle_transition& b);

struct wq_factors {
  series_matrix left, middle, right, product;
};
wq_factors wq_factorisation(int k, int q);
/// Checks L [[z^k, z^q], [0, z^(2-k)]] R = diag(z^q, z^(2-q)) with L holomorphic
/// on V and R holomorphic on U, both of constant nonzero determinant.
bool verify_wq_identity(int k, int q);

/// p + z^j b + z^-j beta = lambda q, b holomorphic on U, beta holomorphic on V.
struct shift_witness {
  rational lambda;
  multi_series b;     // U chart
  multi_series beta;  // V chart
};

struct shift_decision {
  bool equivalent = false;
  std::optional<shift_witness> witness;
};

shift_decision shift_equivalent(const extension_class& p, const extension_class& q, const threefold_spec& spec,
                                truncation_policy t);
/// Recomputes p + z^j b + z^-j beta - lambda q exactly; true when it vanishes up to the u-degree cap.
bool check_shift_witness(const extension_class& p, const extension_class& q, const threefold_spec& spec,
                         const shift_witness& w, int u_deg_max);

struct moduli_report {
  int j = 0;
  threefold_spec spec;
  int count = 0;
  int projective_dimension = -1;
  std::vector<extension_class> generators;
  truncation_policy certified_window;
};

moduli_report first_neighborhood_moduli(int j, const threefold_spec& spec, truncation_policy t,
                                        basis_options opts = {});

/// Sections on the order-n neighbourhood of the zero section.
cohomology_basis formal_sections(const bundle_transition& b, int n, truncation_policy t, basis_options opts = {});
int formal_section_dimension(const bundle_transition& b, int n, truncation_policy t, basis_options opts = {});

enum class iso_verdict { not_isomorphic, isomorphic, possibly_isomorphic };
std::string_view iso_verdict_name(iso_verdict v);

struct iso_report {
  iso_verdict verdict = iso_verdict::possibly_isomorphic;
  std::string reason;
  std::optional<shift_witness> witness;
};

iso_report distinguish_bundles(const bundle_transition& a, const bundle_transition& b, truncation_policy t,
                               basis_options opts = {});

}  // namespace wk

#pragma once

// Deformations: integrating tangent cocycles into new gluings, rigidity of
// the split threefolds, isomorphism of affine line bundles and holomorphy of
// maps given chartwise.

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "wk/cech.hpp"

namespace wk {

struct not_integrable {
  std::string reason;
};

/// Adds z^k1 c[1] to the v1 rule and z^k2 c[2] to the v2 rule; integrable when
/// the new gluing is invertible. A nonzero c[0] (moving the base) is rejected.
std::variant<threefold_spec, not_integrable> integrate_cocycle(const threefold_spec& spec, const cochain& c,
                                                               int u_deg_max = 6);

enum class rigidity_kind { zero, finite, growing };
std::string_view rigidity_name(rigidity_kind k);

struct rigidity_report {
  rigidity_kind kind = rigidity_kind::zero;
  int dimension = 0;               // meaningful for finite
  std::vector<int> per_cap;        // h1 of the tangent bundle at caps D-2, D-1, D
  std::optional<std::string> pattern;
};

rigidity_report classify_rigidity(int k1, int k2, truncation_policy t, basis_options opts = {});

enum class affine_verdict { not_isomorphic, isomorphic, inconclusive };
std::string_view affine_verdict_name(affine_verdict v);

struct affine_iso_report {
  affine_verdict verdict = affine_verdict::inconclusive;
  int ansatz_degree = 0;
  std::optional<multi_series> forced_a;        // A^U when the equations pin it down
  std::optional<exponent> contradiction;       // monomial left over when A is a nonzero constant
  std::string reason;
};

/// Affine bundles u1 -> z^3 u1 + z^2 u2^j over the surface with (xi, v2) = (1/z, u2/z).
affine_iso_report affine_bundle_iso(int j1, int j2, int ansatz_degree);

struct map_spec {
  std::array<multi_series, 3> on_u;  // target U coordinates in source U variables
  std::array<multi_series, 3> on_v;  // target V coordinates in source V variables
};

struct map_check {
  bool holomorphic = false;
  std::string reason;
};

map_check verify_map_holomorphic(const map_spec& m, const threefold_spec& source, const threefold_spec& target,
                                 int u_deg_max = 6);

}  // namespace wk

#pragma once

// Two-chart models of the threefolds Tot(O(-k1) + O(-k2)) over P^1, their
// perturbed gluings, and vector bundles given by transition matrices.
//
// Chart U has coordinates (z, u1, u2), chart V has (xi, v1, v2); the
// unperturbed gluing is xi = 1/z, v1 = z^k1 u1, v2 = z^k2 u2. W_k is the case
// (k1, k2) = (k, 2 - k).

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "wk/series.hpp"

namespace wk {

struct inversion_failure : error {
  using error::error;
};
struct line_not_preserved : error {
  using error::error;
};
struct precondition_error : error {
  using error::error;
};

enum class slot : std::uint8_t { v1, v2 };

struct perturbation {
  slot where = slot::v1;
  multi_series term;  // U-chart series added to the slot's forward rule
};

struct threefold_spec {
  int k1 = 1;
  int k2 = 1;
  std::vector<perturbation> perturbations;

  static threefold_spec w(int k) { return {k, 2 - k, {}}; }
  static threefold_spec product(int k1, int k2) { return {k1, k2, {}}; }
  /// W_2 deformed by v1 = z^2 u1 + z tau(u2).
  static threefold_spec w2_tau(const multi_series& tau);
  /// W_2 deformed by v1 = z^2 u1 + z u2^y.
  static threefold_spec w2_y(int y);

  [[nodiscard]] multi_series slot_perturbation(slot s, truncation_policy p) const;
  [[nodiscard]] bool has_perturbation() const noexcept { return !perturbations.empty(); }
  /// True when every perturbation vanishes on the zero section u1 = u2 = 0.
  [[nodiscard]] bool preserves_line() const;
  /// Largest |z| exponent appearing in the gluing.
  [[nodiscard]] int z_spread() const;
};

struct not_invertible {
  std::string reason;
};

/// forward expresses (xi, v1, v2) in U variables; inverse expresses
/// (z, u1, u2) in V variables when the gluing can be solved.
struct transition {
  substitution_rule forward;
  std::variant<substitution_rule, not_invertible> inverse;

  [[nodiscard]] bool invertible() const noexcept { return std::holds_alternative<substitution_rule>(inverse); }
  [[nodiscard]] const substitution_rule& inverse_rule() const;
  [[nodiscard]] std::string failure_reason() const;
};

transition build_transition(const threefold_spec& spec, truncation_policy work);

using series_matrix = std::vector<multi_series>;  // row-major

struct extension_class {
  int j = 0;
  multi_series p;
};

class bundle_transition {
 public:
  /// Square matrix M with (V-frame) = M (U-frame), entries in U variables.
  /// Throws inversion_failure when det M is not a unit within the window.
  bundle_transition(threefold_spec base, series_matrix matrix, truncation_policy work, std::string kind = "bundle");
  bundle_transition(threefold_spec base, series_matrix matrix, series_matrix inverse, truncation_policy work,
                    std::string kind);

  [[nodiscard]] int rank() const noexcept { return rank_; }
  [[nodiscard]] const multi_series& at(int r, int c) const { return matrix_[static_cast<std::size_t>(r * rank_ + c)]; }
  [[nodiscard]] const multi_series& inverse_at(int r, int c) const {
    return inverse_[static_cast<std::size_t>(r * rank_ + c)];
  }
  [[nodiscard]] const series_matrix& matrix() const noexcept { return matrix_; }
  [[nodiscard]] const series_matrix& inverse() const noexcept { return inverse_; }
  [[nodiscard]] const threefold_spec& base() const noexcept { return base_; }
  [[nodiscard]] const transition& base_transition() const noexcept { return transition_; }
  [[nodiscard]] const truncation_policy& work() const noexcept { return work_; }
  [[nodiscard]] const std::string& kind() const noexcept { return kind_; }

  std::optional<extension_class> extension;

 private:
  threefold_spec base_;
  int rank_ = 0;
  series_matrix matrix_;
  series_matrix inverse_;
  truncation_policy work_;
  transition transition_;
  std::string kind_;
};

series_matrix matrix_product(const series_matrix& a, const series_matrix& b, int n);
multi_series determinant(const series_matrix& m, int n);
/// Inverse through the adjugate; empty when the determinant is not a unit.
std::optional<series_matrix> matrix_inverse(const series_matrix& m, int n);

bundle_transition tangent_jacobian(const threefold_spec& spec, truncation_policy work);
bundle_transition extension_to_transition(const extension_class& e, const threefold_spec& base,
                                          truncation_policy work);
/// O(d) has scalar transition z^-d.
bundle_transition line_bundle_transition(int d, const threefold_spec& base, truncation_policy work);
/// g -> M g M^-1 acting on row-major vectorised endomorphisms.
bundle_transition endomorphism_transition(const bundle_transition& b);

/// Exponents (a1 >= a2) with L(xi) M R(z) = diag(z^a1, z^a2), for a 2x2
/// u-free Laurent matrix whose determinant is a monomial. Determined by
/// counting sections of the twists z^t M.
std::pair<int, int> birkhoff_exponents(const series_matrix& m);

/// Degrees of the conormal bundle of the zero section, largest first.
std::pair<int, int> conormal_on_line(const threefold_spec& spec);

}  // namespace wk

#pragma once

// Sparse row-echelon structure over the rationals.
//
// Vectors are sparse maps from an ordered key to a coefficient. Each stored
// vector is normalised so that its smallest key (the pivot) has coefficient 1
// and no two stored vectors share a pivot. Every vector carries the linear
// combination of input columns it represents, which is how witnesses are
// recovered from a solve.

#include <map>
#include <optional>
#include <utility>

#include "wk/series.hpp"

namespace wk {

template <class Key>
using sparse_vector = std::map<Key, rational>;

using combination = std::map<int, rational>;

template <class Key>
void axpy(sparse_vector<Key>& y, const rational& a, const sparse_vector<Key>& x) {
  for (const auto& [k, c] : x) {
    auto [it, inserted] = y.try_emplace(k, a * c);
    if (!inserted) {
      it->second += a * c;
      if (sgn(it->second) == 0) y.erase(it);
    }
  }
}

inline void axpy(combination& y, const rational& a, const combination& x) {
  for (const auto& [k, c] : x) {
    auto [it, inserted] = y.try_emplace(k, a * c);
    if (!inserted) {
      it->second += a * c;
      if (sgn(it->second) == 0) y.erase(it);
    }
  }
}

template <class Key>
class sparse_echelon {
 public:
  struct reduced {
    sparse_vector<Key> residual;
    combination comb;  // residual = sum comb[i] * column_i
  };

  /// Reduces v modulo the stored span. `comb` describes v on entry.
  [[nodiscard]] reduced reduce(sparse_vector<Key> v, combination comb = {}) const {
    auto it = v.begin();
    while (it != v.end()) {
      auto piv = pivots_.find(it->first);
      if (piv == pivots_.end()) {
        ++it;
        continue;
      }
      const Key key = it->first;
      const rational factor = -it->second;
      axpy(v, factor, piv->second.vec);
      axpy(comb, factor, piv->second.comb);
      it = v.upper_bound(key);
    }
    return {std::move(v), std::move(comb)};
  }

  /// Inserts column `id` with the given vector. Returns the reduced residual;
  /// when it is zero the column was dependent and nothing is stored.
  reduced insert(int id, sparse_vector<Key> v) {
    combination comb{{id, rational(1)}};
    auto r = reduce(std::move(v), std::move(comb));
    if (!r.residual.empty()) store(r);
    return r;
  }

  /// Inserts an already reduced vector (as returned by reduce/insert).
  void store(const reduced& r) {
    const rational inv = 1 / r.residual.begin()->second;
    entry e;
    e.vec = r.residual;
    e.comb = r.comb;
    for (auto& [k, c] : e.vec) c *= inv;
    for (auto& [k, c] : e.comb) c *= inv;
    pivots_.emplace(r.residual.begin()->first, std::move(e));
  }

  [[nodiscard]] std::size_t rank() const noexcept { return pivots_.size(); }
  [[nodiscard]] bool has_pivot(const Key& k) const { return pivots_.count(k) != 0; }

 private:
  struct entry {
    sparse_vector<Key> vec;
    combination comb;
  };
  std::map<Key, entry> pivots_;
};

}  // namespace wk

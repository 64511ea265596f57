#pragma once

// Flat key-value documents: one `key = value` per line, `#` starts a comment.
// Used for threefold specs, maps, cocycles and run configuration.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wk/cech.hpp"
#include "wk/deform.hpp"

namespace wk {

struct kv_entry {
  std::string key;
  std::string value;
  int line = 0;
};

class kv_document {
 public:
  static kv_document parse(std::string_view text);

  [[nodiscard]] const std::vector<kv_entry>& entries() const noexcept { return entries_; }
  [[nodiscard]] std::optional<std::string> get(std::string_view key) const;  // last occurrence wins
  [[nodiscard]] std::vector<std::string> get_all(std::string_view key) const;
  [[nodiscard]] bool has(std::string_view key) const { return get(key).has_value(); }
  [[nodiscard]] int get_int(std::string_view key, int fallback) const;
  /// Keys outside `allowed` raise parse_error.
  void require_known(const std::vector<std::string>& allowed) const;

 private:
  std::vector<kv_entry> entries_;
};

/// Reads k1, k2 and repeated perturb.v1 / perturb.v2 entries, all under `prefix`.
threefold_spec read_threefold_spec(const kv_document& doc, truncation_policy p, std::string_view prefix = "");
threefold_spec parse_threefold_spec(std::string_view text, truncation_policy p);
std::string render_threefold_spec(const threefold_spec& s);

/// map.u.1..3 in U variables and map.v.1..3 in V variables.
map_spec read_map_spec(const kv_document& doc, truncation_policy p);
/// cocycle.1..3 in U variables; missing components are zero.
cochain read_cocycle(const kv_document& doc, truncation_policy p);

}  // namespace wk

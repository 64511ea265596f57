#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "wk/series.hpp"

namespace wk::cli {

enum class output_format { text, json };

struct run_config {
  truncation_policy window;
  int growth_cap = 4;
  output_format format = output_format::text;
  std::optional<std::filesystem::path> cache_dir;

  /// Applies keys u_deg, z_min, z_max, growth_cap, format, cache_dir from a key-value file.
  void merge_file(const std::filesystem::path& path);
  /// Throws parse_error when the window or growth cap is unusable.
  void validate() const;
  /// Canonical text of the settings that influence results (not format or cache location).
  [[nodiscard]] std::string cache_text() const;
};

output_format parse_format(const std::string& text);
std::string read_file(const std::filesystem::path& path);

}  // namespace wk::cli

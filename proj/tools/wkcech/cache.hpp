#pragma once

// Content-addressed cache of JSON reports: one file per key under the cache
// directory, written through a temporary file and renamed into place.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

namespace wk::cli {

std::string sha256_hex(std::string_view data);

class report_cache {
 public:
  explicit report_cache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  [[nodiscard]] std::optional<nlohmann::ordered_json> load(const std::string& key) const;
  void store(const std::string& key, const nlohmann::ordered_json& entry) const;

 private:
  [[nodiscard]] std::filesystem::path path_for(const std::string& key) const { return dir_ / (key + ".json"); }
  std::filesystem::path dir_;
};

}  // namespace wk::cli

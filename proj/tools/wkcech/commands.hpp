#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "run_config.hpp"

namespace wk::cli {

using report = nlohmann::ordered_json;

struct request {
  std::string command;
  std::optional<std::filesystem::path> spec;
  std::optional<std::filesystem::path> target;
  std::optional<std::filesystem::path> map;
  std::string bundle = "tangent";
  std::optional<int> j;
  std::optional<int> j1;
  std::optional<int> j2;
  std::optional<int> neighborhood;
  std::optional<int> ansatz;
  std::optional<std::string> extension;  // p of [[z^j, p], [0, z^-j]]
  std::optional<std::string> other;      // q for iso
  std::vector<int> only;                 // suite criteria filter
  unsigned threads = 0;
};

struct outcome {
  int exit_code = 0;
  report body;
};

/// Runs the request, consulting and filling the cache when one is configured.
outcome execute(const request& r, const run_config& cfg);

std::string render_text(const std::string& command, const report& body);

}  // namespace wk::cli

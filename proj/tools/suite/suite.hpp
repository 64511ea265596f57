#pragma once

// Reproduction suite: every numbered check of the threefold computations,
// shared by `wkcech suite` and the acceptance test binary.

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "wk/series.hpp"

namespace wk::suite {

enum class status { pass, fail, recorded, window_too_small };
std::string_view status_name(status s);

struct check_result {
  int criterion = 0;
  std::string name;
  std::string expected;
  std::string computed;
  status state = status::fail;
};

struct suite_config {
  truncation_policy window;
  int growth_cap = 4;
  unsigned seed = 20240611;
  int property_cases = 200;
};

struct criterion {
  int number = 0;
  std::string title;
  int min_u_deg = 0;  // below this the criterion reports window_too_small
  std::function<std::vector<check_result>(const suite_config&)> run;
};

const std::vector<criterion>& criteria();

/// Runs one criterion, turning window failures into window_too_small results.
std::vector<check_result> run_criterion(const criterion& c, const suite_config& cfg);

struct suite_result {
  std::vector<check_result> checks;
  /// 2 when some check was uncertified, otherwise 1 when some check failed, else 0.
  [[nodiscard]] int exit_code() const;
  /// Worst status among the checks of one criterion, ignoring recorded lines.
  [[nodiscard]] status criterion_status(int number) const;
};

/// Runs the criteria on up to `threads` worker threads; results keep criterion order.
suite_result run_suite(const suite_config& cfg, unsigned threads = 0, const std::vector<int>& only = {});

// Helpers for building check lists.
check_result make_check(int criterion, std::string name, std::string expected, std::string computed);
check_result make_bool_check(int criterion, std::string name, bool ok, std::string expected = "true",
                             std::string computed = "");

std::vector<criterion> cohomology_criteria();
std::vector<criterion> bundle_criteria();
std::vector<criterion> deformation_criteria();
std::vector<criterion> property_criteria();

}  // namespace wk::suite

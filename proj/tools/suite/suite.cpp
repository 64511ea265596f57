#include "suite.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "wk/cech.hpp"

namespace wk::suite {

std::string_view status_name(status s) {
  switch (s) {
    case status::pass: return "pass";
    case status::fail: return "fail";
    case status::recorded: return "recorded";
    case status::window_too_small: return "window-too-small";
  }
  return "fail";
}

check_result make_check(int criterion, std::string name, std::string expected, std::string computed) {
  const status st = expected == computed ? status::pass : status::fail;
  return {criterion, std::move(name), std::move(expected), std::move(computed), st};
}

check_result make_bool_check(int criterion, std::string name, bool ok, std::string expected, std::string computed) {
  if (computed.empty()) computed = ok ? expected : "false";
  return {criterion, std::move(name), std::move(expected), std::move(computed), ok ? status::pass : status::fail};
}

const std::vector<criterion>& criteria() {
  static const std::vector<criterion> all = [] {
    std::vector<criterion> out;
    for (auto part : {cohomology_criteria(), bundle_criteria(), deformation_criteria(), property_criteria()})
      out.insert(out.end(), part.begin(), part.end());
    std::sort(out.begin(), out.end(), [](const criterion& a, const criterion& b) { return a.number < b.number; });
    return out;
  }();
  return all;
}

std::vector<check_result> run_criterion(const criterion& c, const suite_config& cfg) {
  auto uncertified = [&](const std::string& why) {
    return std::vector<check_result>{{c.number, c.title, "certified result", why, status::window_too_small}};
  };
  if (cfg.window.u_deg_max < c.min_u_deg)
    return uncertified("needs u-degree cap " + std::to_string(c.min_u_deg) + ", have " +
                       std::to_string(cfg.window.u_deg_max));
  try {
    return c.run(cfg);
  } catch (const window_too_small& e) {
    return uncertified(e.what());
  } catch (const std::exception& e) {
    return {{c.number, c.title, "no error", e.what(), status::fail}};
  }
}

int suite_result::exit_code() const {
  const bool any_fail = std::any_of(checks.begin(), checks.end(), [](const auto& c) { return c.state == status::fail; });
  const bool any_window =
      std::any_of(checks.begin(), checks.end(), [](const auto& c) { return c.state == status::window_too_small; });
  if (any_window) return 2;
  return any_fail ? 1 : 0;
}

status suite_result::criterion_status(int number) const {
  status worst = status::pass;
  for (const auto& c : checks) {
    if (c.criterion != number) continue;
    if (c.state == status::window_too_small) return status::window_too_small;
    if (c.state == status::fail) worst = status::fail;
  }
  return worst;
}

suite_result run_suite(const suite_config& cfg, unsigned threads, const std::vector<int>& only) {
  std::vector<const criterion*> todo;
  for (const auto& c : criteria())
    if (only.empty() || std::find(only.begin(), only.end(), c.number) != only.end()) todo.push_back(&c);
  std::vector<std::vector<check_result>> parts(todo.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(todo.size()));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < todo.size(); i = next++) parts[i] = run_criterion(*todo[i], cfg);
  };
  std::vector<std::jthread> pool;
  for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  pool.clear();
  suite_result r;
  for (auto& p : parts) r.checks.insert(r.checks.end(), p.begin(), p.end());
  return r;
}

}  // namespace wk::suite

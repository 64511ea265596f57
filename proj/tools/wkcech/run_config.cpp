#include "run_config.hpp"

#include <fstream>
#include <sstream>

#include "wk/spec_io.hpp"

namespace wk::cli {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw parse_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

output_format parse_format(const std::string& text) {
  if (text == "text") return output_format::text;
  if (text == "json") return output_format::json;
  throw parse_error("format must be text or json, got '" + text + "'");
}

void run_config::merge_file(const std::filesystem::path& path) {
  const kv_document doc = kv_document::parse(read_file(path));
  doc.require_known({"u_deg", "z_min", "z_max", "growth_cap", "format", "cache_dir"});
  window.u_deg_max = doc.get_int("u_deg", window.u_deg_max);
  window.z_min = doc.get_int("z_min", window.z_min);
  window.z_max = doc.get_int("z_max", window.z_max);
  growth_cap = doc.get_int("growth_cap", growth_cap);
  if (auto f = doc.get("format")) format = parse_format(*f);
  if (auto d = doc.get("cache_dir")) cache_dir = *d;
}

void run_config::validate() const {
  if (!window.valid()) throw parse_error("window needs u_deg >= 0, z_min <= 0 <= z_max");
  if (growth_cap < 1) throw parse_error("growth_cap must be at least 1");
}

std::string run_config::cache_text() const {
  return "u_deg=" + std::to_string(window.u_deg_max) + ";z_min=" + std::to_string(window.z_min) +
         ";z_max=" + std::to_string(window.z_max) + ";growth_cap=" + std::to_string(growth_cap);
}

}  // namespace wk::cli

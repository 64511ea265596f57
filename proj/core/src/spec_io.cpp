#include "wk/spec_io.hpp"

#include <algorithm>
#include <charconv>

namespace wk {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

int to_int(std::string_view key, std::string_view value) {
  int out = 0;
  const auto* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end)
    throw parse_error("key '" + std::string(key) + "' expects an integer, got '" + std::string(value) + "'");
  return out;
}

multi_series read_series(const kv_document& doc, const std::string& key, chart c, truncation_policy p) {
  const auto v = doc.get(key);
  if (!v) return multi_series(c, p);
  try {
    return parse_series(*v, c, p);
  } catch (const parse_error& e) {
    throw parse_error("key '" + key + "': " + e.what());
  }
}

}  // namespace

kv_document kv_document::parse(std::string_view text) {
  kv_document doc;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw parse_error("line " + std::to_string(line_no) + ": expected 'key = value'");
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key.empty()) throw parse_error("line " + std::to_string(line_no) + ": empty key");
    doc.entries_.push_back({std::string(key), std::string(value), line_no});
  }
  return doc;
}

std::optional<std::string> kv_document::get(std::string_view key) const {
  for (auto it = entries_.rbegin(); it != entries_.rend(); ++it)
    if (it->key == key) return it->value;
  return std::nullopt;
}

std::vector<std::string> kv_document::get_all(std::string_view key) const {
  std::vector<std::string> out;
  for (const auto& e : entries_)
    if (e.key == key) out.push_back(e.value);
  return out;
}

int kv_document::get_int(std::string_view key, int fallback) const {
  const auto v = get(key);
  return v ? to_int(key, *v) : fallback;
}

void kv_document::require_known(const std::vector<std::string>& allowed) const {
  for (const auto& e : entries_)
    if (std::find(allowed.begin(), allowed.end(), e.key) == allowed.end())
      throw parse_error("line " + std::to_string(e.line) + ": unknown key '" + e.key + "'");
}

threefold_spec read_threefold_spec(const kv_document& doc, truncation_policy p, std::string_view prefix) {
  const std::string pre(prefix);
  if (!doc.has(pre + "k1") || !doc.has(pre + "k2"))
    throw parse_error("spec needs both " + pre + "k1 and " + pre + "k2");
  threefold_spec s;
  s.k1 = doc.get_int(pre + "k1", 0);
  s.k2 = doc.get_int(pre + "k2", 0);
  for (const auto& e : doc.entries()) {
    slot where;
    if (e.key == pre + "perturb.v1") {
      where = slot::v1;
    } else if (e.key == pre + "perturb.v2") {
      where = slot::v2;
    } else {
      continue;
    }
    try {
      s.perturbations.push_back({where, parse_series(e.value, chart::u, p)});
    } catch (const parse_error& err) {
      throw parse_error("line " + std::to_string(e.line) + ": " + err.what());
    }
  }
  return s;
}

threefold_spec parse_threefold_spec(std::string_view text, truncation_policy p) {
  return read_threefold_spec(kv_document::parse(text), p);
}

std::string render_threefold_spec(const threefold_spec& s) {
  std::string out = "k1 = " + std::to_string(s.k1) + "\nk2 = " + std::to_string(s.k2) + "\n";
  for (const auto& pt : s.perturbations)
    out += std::string(pt.where == slot::v1 ? "perturb.v1" : "perturb.v2") + " = " + pt.term.render() + "\n";
  return out;
}

map_spec read_map_spec(const kv_document& doc, truncation_policy p) {
  map_spec m;
  for (int i = 0; i < 3; ++i) {
    const auto idx = std::to_string(i + 1);
    if (!doc.has("map.u." + idx) || !doc.has("map.v." + idx))
      throw parse_error("map needs map.u." + idx + " and map.v." + idx);
    m.on_u[static_cast<std::size_t>(i)] = read_series(doc, "map.u." + idx, chart::u, p);
    m.on_v[static_cast<std::size_t>(i)] = read_series(doc, "map.v." + idx, chart::v, p);
  }
  return m;
}

cochain read_cocycle(const kv_document& doc, truncation_policy p) {
  cochain c;
  for (int i = 1; i <= 3; ++i) c.push_back(read_series(doc, "cocycle." + std::to_string(i), chart::u, p));
  return c;
}

}  // namespace wk

#include "commands.hpp"

#include <functional>
#include <map>

#include "cache.hpp"
#include "suite.hpp"
#include "wk/bundles.hpp"
#include "wk/deform.hpp"
#include "wk/spec_io.hpp"

namespace wk::cli {

namespace {

const std::vector<std::string> spec_keys{"k1", "k2", "perturb.v1", "perturb.v2", "cocycle.1", "cocycle.2", "cocycle.3"};
const std::vector<std::string> map_keys{"map.u.1", "map.u.2", "map.u.3", "map.v.1", "map.v.2", "map.v.3"};

struct context {
  const request& req;
  const run_config& cfg;
  std::string spec_bytes;

  [[nodiscard]] truncation_policy wide() const { return truncation_policy::wide(cfg.window.u_deg_max); }
  [[nodiscard]] basis_options options(bool pattern) const { return {cfg.growth_cap, pattern}; }

  [[nodiscard]] kv_document spec_doc() const {
    if (!req.spec) throw parse_error(req.command + " needs --spec");
    kv_document doc = kv_document::parse(spec_bytes);
    doc.require_known(spec_keys);
    return doc;
  }
  [[nodiscard]] threefold_spec spec() const { return read_threefold_spec(spec_doc(), wide()); }

  [[nodiscard]] int need(const std::optional<int>& v, const char* flag) const {
    if (!v) throw parse_error(req.command + " needs " + flag);
    return *v;
  }

  [[nodiscard]] extension_class extension(const std::optional<std::string>& p, const char* flag) const {
    if (!p) throw parse_error(req.command + " needs " + flag);
    return {need(req.j, "--j"), parse_series(*p, chart::u, wide())};
  }
};

report window_json(const truncation_policy& w) {
  return {{"u_deg", w.u_deg_max}, {"z_min", w.z_min}, {"z_max", w.z_max}};
}

report basis_json(const cohomology_basis& b) {
  report out;
  out["dimension"] = b.dimension();
  out["certified_window"] = window_json(b.certified_window);
  out["classes"] = report::array();
  for (const auto& c : b.classes) out["classes"].push_back(render_cochain(c));
  if (b.family_pattern) out["family_pattern"] = *b.family_pattern;
  out["stabilized"] = b.stabilized;
  return out;
}

/// Builds the bundle named by --bundle over `spec` for a given window.
bundle_factory bundle_for(const context& ctx, const threefold_spec& spec) {
  const std::string& name = ctx.req.bundle;
  if (name == "tangent")
    return [spec](truncation_policy w) { return tangent_jacobian(spec, truncation_policy::wide(w.u_deg_max)); };
  if (name == "end-tangent")
    return [spec](truncation_policy w) {
      return endomorphism_transition(tangent_jacobian(spec, truncation_policy::wide(w.u_deg_max)));
    };
  if (name == "extension") {
    const extension_class e = ctx.extension(ctx.req.extension, "--class");
    return [spec, e](truncation_policy w) {
      return extension_to_transition(e, spec, truncation_policy::wide(w.u_deg_max));
    };
  }
  std::string digits;
  if (name.rfind("line:", 0) == 0) {
    digits = name.substr(5);
  } else if (name.rfind("line(", 0) == 0 && name.back() == ')') {
    digits = name.substr(5, name.size() - 6);
  } else {
    throw parse_error("unknown bundle '" + name + "'; use tangent, end-tangent, extension or line:d");
  }
  int d = 0;
  try {
    std::size_t used = 0;
    d = std::stoi(digits, &used);
    if (used != digits.size()) throw std::invalid_argument(digits);
  } catch (const std::exception&) {
    throw parse_error("line bundle degree must be an integer, got '" + digits + "'");
  }
  return [spec, d](truncation_policy w) { return line_bundle_transition(d, spec, truncation_policy::wide(w.u_deg_max)); };
}

report cmd_h1(const context& ctx) {
  return basis_json(h1_basis(bundle_for(ctx, ctx.spec()), ctx.cfg.window, ctx.options(true)));
}

report cmd_sections(const context& ctx) {
  const int n = ctx.req.neighborhood.value_or(ctx.cfg.window.u_deg_max);
  if (n < 0) throw parse_error("--neighborhood must be nonnegative");
  const threefold_spec spec = ctx.spec();
  const bundle_transition b = bundle_for(ctx, spec)(truncation_policy::wide(std::max(n, ctx.cfg.window.u_deg_max)));
  report out = basis_json(formal_sections(b, n, ctx.cfg.window, ctx.options(false)));
  out["neighborhood"] = n;
  return out;
}

report cmd_ext(const context& ctx) {
  const int j = ctx.need(ctx.req.j, "--j");
  const threefold_spec spec = ctx.spec();
  const ext_basis e = ext_group_basis(-j, j, spec, ctx.cfg.window, ctx.options(true));
  report out;
  out["j"] = j;
  out["dimension"] = e.h1.dimension();
  out["certified_window"] = window_json(e.h1.certified_window);
  out["classes"] = report::array();
  for (const auto& c : e.classes) out["classes"].push_back(c.p.render());
  out["generators"] = report::array();
  for (const auto& g : ext_generator_monomials(j, spec, ctx.cfg.window)) out["generators"].push_back(g.render());
  if (e.h1.family_pattern) out["family_pattern"] = *e.h1.family_pattern;
  out["stabilized"] = e.h1.stabilized;
  return out;
}

report cmd_moduli(const context& ctx) {
  const int j = ctx.need(ctx.req.j, "--j");
  const moduli_report m = first_neighborhood_moduli(j, ctx.spec(), ctx.cfg.window, ctx.options(false));
  report out;
  out["j"] = j;
  out["spec_hash"] = sha256_hex(ctx.spec_bytes);
  out["count"] = m.count;
  out["projective_dimension"] = m.projective_dimension;
  out["generators"] = report::array();
  for (const auto& g : m.generators) out["generators"].push_back(g.p.render());
  return out;
}

report cmd_split_type(const context& ctx) {
  const threefold_spec spec = ctx.spec();
  report out;
  if (ctx.req.extension) {
    const auto b = extension_to_transition(ctx.extension(ctx.req.extension, "--class"), spec, ctx.wide());
    const auto st = splitting_type_on_line(b);
    out["bundle"] = "extension";
    out["splitting_type"] = {st.a1, st.a2};
  } else {
    const auto [a, b] = conormal_on_line(spec);
    out["bundle"] = "conormal";
    out["splitting_type"] = {a, b};
  }
  return out;
}

report shift_witness_json(const shift_witness& w) {
  return {{"lambda", w.lambda.get_str()}, {"b", w.b.render()}, {"beta", w.beta.render()}};
}

report cmd_iso(const context& ctx) {
  const threefold_spec spec = ctx.spec();
  const auto a = extension_to_transition(ctx.extension(ctx.req.extension, "--class"), spec, ctx.wide());
  const auto b = extension_to_transition(ctx.extension(ctx.req.other, "--other"), spec, ctx.wide());
  const iso_report r = distinguish_bundles(a, b, ctx.cfg.window, ctx.options(false));
  report out;
  out["verdict"] = std::string(iso_verdict_name(r.verdict));
  out["reason"] = r.reason;
  if (r.witness) out["witness"] = shift_witness_json(*r.witness);
  return out;
}

report cmd_integrate(const context& ctx) {
  const kv_document doc = ctx.spec_doc();
  const threefold_spec spec = read_threefold_spec(doc, ctx.wide());
  const cochain c = read_cocycle(doc, ctx.wide());
  const auto r = integrate_cocycle(spec, c, ctx.cfg.window.u_deg_max);
  report out;
  out["cocycle"] = render_cochain(c);
  out["integrable"] = std::holds_alternative<threefold_spec>(r);
  if (const auto* s = std::get_if<threefold_spec>(&r)) {
    out["spec"] = render_threefold_spec(*s);
  } else {
    out["reason"] = std::get<not_integrable>(r).reason;
  }
  return out;
}

report cmd_affine_iso(const context& ctx) {
  const int j1 = ctx.need(ctx.req.j1, "--j1");
  const int j2 = ctx.need(ctx.req.j2, "--j2");
  const int degree = ctx.req.ansatz.value_or(ctx.cfg.window.u_deg_max);
  const affine_iso_report r = affine_bundle_iso(j1, j2, degree);
  report out;
  out["j1"] = j1;
  out["j2"] = j2;
  out["verdict"] = std::string(affine_verdict_name(r.verdict));
  out["ansatz_degree"] = r.ansatz_degree;
  if (r.forced_a) out["forced_a"] = r.forced_a->render();
  if (r.contradiction) {
    const std::string m = render_monomial(*r.contradiction, chart::u);
    out["contradiction"] = m.empty() ? "1" : m;
  }
  out["reason"] = r.reason;
  return out;
}

report cmd_verify_map(const context& ctx) {
  if (!ctx.req.target || !ctx.req.map) throw parse_error("verify-map needs --target and --map");
  const kv_document target_doc = kv_document::parse(read_file(*ctx.req.target));
  target_doc.require_known(spec_keys);
  const kv_document map_doc = kv_document::parse(read_file(*ctx.req.map));
  map_doc.require_known(map_keys);
  const map_check c = verify_map_holomorphic(read_map_spec(map_doc, ctx.wide()), ctx.spec(),
                                             read_threefold_spec(target_doc, ctx.wide()), ctx.cfg.window.u_deg_max);
  report out;
  out["holomorphic"] = c.holomorphic;
  if (!c.holomorphic) out["reason"] = c.reason;
  return out;
}

outcome cmd_suite(const context& ctx) {
  suite::suite_config sc;
  sc.window = ctx.cfg.window;
  sc.growth_cap = ctx.cfg.growth_cap;
  const suite::suite_result r = suite::run_suite(sc, ctx.req.threads, ctx.req.only);
  report out;
  out["checks"] = report::array();
  std::map<std::string, int> tally{{"pass", 0}, {"fail", 0}, {"recorded", 0}, {"window-too-small", 0}};
  for (const auto& c : r.checks) {
    const std::string st(suite::status_name(c.state));
    ++tally[st];
    out["checks"].push_back(
        {{"criterion", c.criterion}, {"name", c.name}, {"expected", c.expected}, {"computed", c.computed}, {"status", st}});
  }
  out["summary"] = {{"pass", tally["pass"]},
                    {"fail", tally["fail"]},
                    {"recorded", tally["recorded"]},
                    {"window_too_small", tally["window-too-small"]}};
  return {r.exit_code(), out};
}

outcome dispatch(const context& ctx) {
  static const std::map<std::string, std::function<report(const context&)>> table{
      {"h1", cmd_h1},           {"ext", cmd_ext},           {"moduli", cmd_moduli},
      {"sections", cmd_sections}, {"split-type", cmd_split_type}, {"iso", cmd_iso},
      {"integrate", cmd_integrate}, {"affine-iso", cmd_affine_iso}, {"verify-map", cmd_verify_map}};
  if (ctx.req.command == "suite") return cmd_suite(ctx);
  const auto it = table.find(ctx.req.command);
  if (it == table.end()) throw parse_error("unknown command '" + ctx.req.command + "'");
  return {0, it->second(ctx)};
}

std::string cache_key(const request& r, const run_config& cfg, const std::string& spec_bytes) {
  std::string text = "command=" + r.command + "\nbundle=" + r.bundle;
  auto add = [&](const char* name, const auto& v) {
    if (v) text += std::string("\n") + name + "=" + [&] {
      if constexpr (std::is_same_v<std::decay_t<decltype(*v)>, std::string>) return *v;
      else return std::to_string(*v);
    }();
  };
  add("j", r.j);
  add("j1", r.j1);
  add("j2", r.j2);
  add("neighborhood", r.neighborhood);
  add("ansatz", r.ansatz);
  add("class", r.extension);
  add("other", r.other);
  for (int c : r.only) text += "\nonly=" + std::to_string(c);
  text += "\nconfig=" + cfg.cache_text() + "\nspec=" + spec_bytes;
  if (r.target) text += "\ntarget=" + read_file(*r.target);
  if (r.map) text += "\nmap=" + read_file(*r.map);
  return sha256_hex(text);
}

}  // namespace

outcome execute(const request& r, const run_config& cfg) {
  cfg.validate();
  const std::string spec_bytes = r.spec ? read_file(*r.spec) : std::string();
  std::optional<report_cache> cache;
  std::string key;
  if (cfg.cache_dir) {
    cache.emplace(*cfg.cache_dir);
    key = cache_key(r, cfg, spec_bytes);
    if (auto hit = cache->load(key); hit && hit->contains("exit_code") && hit->contains("report"))
      return {(*hit)["exit_code"].get<int>(), (*hit)["report"]};
  }
  const context ctx{r, cfg, spec_bytes};
  outcome out;
  try {
    out = dispatch(ctx);
  } catch (const window_too_small& e) {
    out = {2, {{"error", "window_too_small"}, {"message", e.what()}}};
  }
  if (cache) cache->store(key, {{"exit_code", out.exit_code}, {"report", out.body}});
  return out;
}

namespace {

void render_value(std::string& out, const std::string& key, const report& v, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (v.is_array()) {
    out += pad + key + ":" + (v.empty() ? " (none)" : "") + "\n";
    for (const auto& item : v) {
      if (item.is_string()) {
        out += pad + "  " + item.get<std::string>() + "\n";
      } else if (item.is_object()) {
        std::string line;
        for (const auto& [k, x] : item.items()) line += (line.empty() ? "" : ", ") + k + "=" + (x.is_string() ? x.get<std::string>() : x.dump());
        out += pad + "  " + line + "\n";
      } else {
        out += pad + "  " + item.dump() + "\n";
      }
    }
  } else if (v.is_object()) {
    out += pad + key + ":\n";
    for (const auto& [k, x] : v.items()) render_value(out, k, x, indent + 2);
  } else if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s.find('\n') != std::string::npos) {
      out += pad + key + ":\n";
      std::size_t pos = 0;
      while (pos < s.size()) {
        const auto nl = s.find('\n', pos);
        out += pad + "  " + s.substr(pos, nl - pos) + "\n";
        pos = nl == std::string::npos ? s.size() : nl + 1;
      }
    } else {
      out += pad + key + ": " + s + "\n";
    }
  } else {
    out += pad + key + ": " + v.dump() + "\n";
  }
}

std::string render_suite(const report& body) {
  std::string out;
  for (const auto& c : body["checks"]) {
    std::string st = c["status"].get<std::string>();
    st.resize(std::max<std::size_t>(st.size(), 16), ' ');
    out += st + " #" + std::to_string(c["criterion"].get<int>()) + " " + c["name"].get<std::string>() +
           "  expected: " + c["expected"].get<std::string>() + "  computed: " + c["computed"].get<std::string>() + "\n";
  }
  const auto& s = body["summary"];
  out += "pass " + s["pass"].dump() + ", fail " + s["fail"].dump() + ", recorded " + s["recorded"].dump() +
         ", window-too-small " + s["window_too_small"].dump() + "\n";
  return out;
}

}  // namespace

std::string render_text(const std::string& command, const report& body) {
  if (command == "suite" && body.contains("checks")) return render_suite(body);
  std::string out;
  for (const auto& [k, v] : body.items()) render_value(out, k, v, 0);
  return out;
}

}  // namespace wk::cli

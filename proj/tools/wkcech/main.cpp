#include <CLI11.hpp>

#include <iostream>

#include "commands.hpp"
#include "wk/geometry.hpp"

namespace {

struct flags {
  std::optional<std::string> config;
  std::optional<int> u_deg, z_min, z_max, growth_cap;
  std::optional<std::string> format, cache_dir;
};

void add_common(CLI::App* sub, flags& f) {
  sub->add_option("--config", f.config, "key-value config file (flags override it)");
  sub->add_option("--u-deg", f.u_deg, "u-degree cap of the window");
  sub->add_option("--z-min", f.z_min, "lowest z power of the starting window");
  sub->add_option("--z-max", f.z_max, "highest z power of the starting window");
  sub->add_option("--growth-cap", f.growth_cap, "number of window growths before giving up");
  sub->add_option("--format", f.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  sub->add_option("--cache-dir", f.cache_dir, "directory of cached JSON reports");
}

wk::cli::run_config resolve(const flags& f) {
  wk::cli::run_config cfg;
  if (f.config) cfg.merge_file(*f.config);
  if (f.u_deg) cfg.window.u_deg_max = *f.u_deg;
  if (f.z_min) cfg.window.z_min = *f.z_min;
  if (f.z_max) cfg.window.z_max = *f.z_max;
  if (f.growth_cap) cfg.growth_cap = *f.growth_cap;
  if (f.format) cfg.format = wk::cli::parse_format(*f.format);
  if (f.cache_dir) cfg.cache_dir = *f.cache_dir;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cech cohomology of two-chart Calabi-Yau threefolds"};
  app.require_subcommand(1);
  flags f;
  wk::cli::request req;

  auto spec_opt = [&](CLI::App* s, bool required = true) {
    auto* o = s->add_option("--spec", req.spec, "threefold spec file")->check(CLI::ExistingFile);
    if (required) o->required();
  };
  auto bundle_opt = [&](CLI::App* s) {
    s->add_option("--bundle", req.bundle, "tangent, end-tangent, extension or line:d")->capture_default_str();
    s->add_option("--j", req.j, "splitting type j of an extension bundle");
    s->add_option("--class", req.extension, "extension cocycle p of [[z^j, p], [0, z^-j]]");
  };

  auto* h1 = app.add_subcommand("h1", "basis of H^1 with coefficients in a bundle");
  spec_opt(h1);
  bundle_opt(h1);

  auto* ext = app.add_subcommand("ext", "Ext^1(O(j), O(-j)) classes and generator monomials");
  spec_opt(ext);
  ext->add_option("--j", req.j, "splitting type")->required();

  auto* moduli = app.add_subcommand("moduli", "first-neighborhood moduli of rank-2 bundles");
  spec_opt(moduli);
  moduli->add_option("--j", req.j, "splitting type")->required();

  auto* sections = app.add_subcommand("sections", "sections on a formal neighborhood of the zero section");
  spec_opt(sections);
  bundle_opt(sections);
  sections->add_option("--neighborhood", req.neighborhood, "order N of the neighborhood");

  auto* split = app.add_subcommand("split-type", "splitting type on the zero section");
  spec_opt(split);
  split->add_option("--j", req.j, "splitting type j of an extension bundle");
  split->add_option("--class", req.extension, "extension cocycle p; without it the conormal bundle is used");

  auto* iso = app.add_subcommand("iso", "compare two extension bundles");
  spec_opt(iso);
  iso->add_option("--j", req.j, "splitting type")->required();
  iso->add_option("--class", req.extension, "first extension cocycle")->required();
  iso->add_option("--other", req.other, "second extension cocycle")->required();

  auto* integrate = app.add_subcommand("integrate", "integrate the cocycle.1..3 entries of the spec");
  spec_opt(integrate);

  auto* affine = app.add_subcommand("affine-iso", "isomorphism of affine bundles E(j1) and E(j2)");
  affine->add_option("--j1", req.j1, "first twist")->required();
  affine->add_option("--j2", req.j2, "second twist")->required();
  affine->add_option("--ansatz", req.ansatz, "polynomial degree of the unknowns (default: u-degree cap)");

  auto* verify = app.add_subcommand("verify-map", "check that a chartwise map is holomorphic");
  spec_opt(verify);
  verify->add_option("--target", req.target, "target spec file")->required()->check(CLI::ExistingFile);
  verify->add_option("--map", req.map, "map file with map.u.1..3 and map.v.1..3")->required()->check(CLI::ExistingFile);

  auto* suite = app.add_subcommand("suite", "run every reproduction check");
  suite->add_option("--only", req.only, "criterion numbers to run");
  suite->add_option("--threads", req.threads, "worker threads (0: one per core)");

  for (auto* s : app.get_subcommands({})) add_common(s, f);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    (void)app.exit(e);
    return 1;
  }

  req.command = app.get_subcommands().front()->get_name();
  try {
    const wk::cli::run_config cfg = resolve(f);
    const wk::cli::outcome out = wk::cli::execute(req, cfg);
    if (cfg.format == wk::cli::output_format::json) {
      std::cout << out.body.dump(2) << '\n';
    } else {
      std::cout << wk::cli::render_text(req.command, out.body);
    }
    return out.exit_code;
  } catch (const wk::parse_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const wk::precondition_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const wk::error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

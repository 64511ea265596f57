#include <random>

#include "helpers.hpp"

namespace wk::suite {

using namespace detail;

namespace {

struct geometry {
  std::string name;
  threefold_spec spec;
};

std::vector<geometry> geometries(const suite_config& cfg) {
  return {{"W1", threefold_spec::w(1)},
          {"W2", threefold_spec::w(2)},
          {"W3", threefold_spec::w(3)},
          {"W2(u2)", threefold_spec::w2_tau(u_series("u2", cfg))},
          {"W2(3)", threefold_spec::w2_y(3)}};
}

class sampler {
 public:
  sampler(unsigned seed, truncation_policy p) : rng_(seed), policy_(p) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  rational coefficient() {
    int num = 0;
    while (num == 0) num = uniform(-5, 5);
    rational r(num, uniform(1, 3));
    r.canonicalize();
    return r;
  }

  /// Up to `terms` monomials with z in [z_lo, z_hi] and u-degree at most `deg`.
  multi_series series(chart c, int z_lo, int z_hi, int deg, int terms) {
    multi_series out(c, policy_);
    const int n = uniform(1, terms);
    for (int t = 0; t < n; ++t) {
      const int d = uniform(0, deg);
      const int i = uniform(0, d);
      out.add_term({uniform(z_lo, z_hi), i, d - i}, coefficient());
    }
    return out;
  }

  cochain sparse_cochain(chart c, int rank, int z_lo, int z_hi, int deg) {
    cochain out(static_cast<std::size_t>(rank), multi_series(c, policy_));
    const int slot = uniform(0, rank - 1);
    out[static_cast<std::size_t>(slot)] = series(c, z_lo, z_hi, deg, 2);
    if (uniform(0, 1)) out[static_cast<std::size_t>(uniform(0, rank - 1))] += series(c, z_lo, z_hi, deg, 1);
    return out;
  }

 private:
  std::mt19937 rng_;
  truncation_policy policy_;
};

check_result tally(const std::string& name, int cases, const std::vector<std::string>& failures) {
  std::string computed = std::to_string(cases - static_cast<int>(failures.size())) + "/" + std::to_string(cases);
  if (!failures.empty()) computed += ", first failure " + failures.front();
  return make_check(16, name, std::to_string(cases) + "/" + std::to_string(cases), computed);
}

std::vector<check_result> round_trips(const suite_config& cfg) {
  std::vector<check_result> out;
  const int n = cfg.property_cases;
  unsigned seed = cfg.seed;
  for (const auto& g : geometries(cfg)) {
    sampler rnd(seed++, wide(cfg));
    const cech_engine engine = tangent_engine(g.spec, cfg);
    std::vector<std::string> bad;
    for (int c = 0; c < n; ++c) {
      const cochain alpha = rnd.sparse_cochain(chart::u, 3, 0, 2, 2);
      const cochain beta = rnd.sparse_cochain(chart::v, 3, 0, 2, 2);
      const cochain back = engine.rewrite_to_u(beta);
      cochain sig = alpha;
      for (std::size_t i = 0; i < sig.size(); ++i) sig[i] += back[i];
      const auto d = engine.is_coboundary(sig);
      if (!d.coboundary || !engine.check_witness(sig, *d.witness) || !engine.check_witness(sig, {alpha, beta}))
        bad.push_back(render_cochain(sig));
    }
    out.push_back(tally("coboundary round trip over " + g.name, n, bad));
  }
  return out;
}

std::vector<check_result> substitution_laws(const suite_config& cfg) {
  std::vector<check_result> out;
  const int n = cfg.property_cases;
  const truncation_policy p = wide(cfg);
  unsigned seed = cfg.seed + 100;
  for (const auto& g : geometries(cfg)) {
    sampler rnd(seed++, p);
    const transition t = build_transition(g.spec, p);
    const substitution_rule inv = t.inverse_rule();
    std::vector<std::string> hom, trip;
    for (int c = 0; c < n; ++c) {
      const multi_series a = rnd.series(chart::v, -3, 3, 3, 3);
      const multi_series b = rnd.series(chart::v, -3, 3, 3, 3);
      const multi_series fa = substitute(a, t.forward, p);
      const multi_series fb = substitute(b, t.forward, p);
      if (substitute(a * b, t.forward, p) != fa * fb || substitute(a + b, t.forward, p) != fa + fb)
        hom.push_back(a.render() + " and " + b.render());
      if (substitute(fa, inv, p) != a) trip.push_back(a.render());
      const multi_series u = rnd.series(chart::u, -3, 3, 3, 3);
      if (substitute(substitute(u, inv, p), t.forward, p) != u) trip.push_back(u.render());
    }
    out.push_back(tally("substitution homomorphism over " + g.name, n, hom));
    out.push_back(tally("transition round trip over " + g.name, 2 * n, trip));
  }
  return out;
}

std::vector<check_result> idempotence(const suite_config& cfg) {
  std::vector<check_result> out;
  const auto geos = geometries(cfg);
  const int n = std::max(1, cfg.property_cases / static_cast<int>(geos.size()));
  unsigned seed = cfg.seed + 200;
  for (const auto& g : geos) {
    sampler rnd(seed++, wide(cfg));
    const cech_engine engine = tangent_engine(g.spec, cfg);
    std::vector<std::string> bad;
    for (int c = 0; c < n; ++c) {
      const cochain sig = rnd.sparse_cochain(chart::u, 3, -3, 1, 3);
      const cochain r = engine.reduce_representative(sig);
      cochain diff = sig;
      for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= r[i];
      if (engine.reduce_representative(r) != r || !engine.is_coboundary(diff).coboundary)
        bad.push_back(render_cochain(sig));
    }
    out.push_back(tally("reduction idempotent over " + g.name, n, bad));
  }
  return out;
}

std::vector<check_result> shift_laws(const suite_config& cfg) {
  const int j = 2;
  const truncation_policy p = wide(cfg);
  const threefold_spec spec = threefold_spec::w2_tau(u_series("u2", cfg));
  const transition t = build_transition(spec, p);
  sampler rnd(cfg.seed + 300, p);
  // q = (p + z^j b + z^-j beta) / lambda is shift-equivalent to p by construction
  auto move = [&](const extension_class& x) {
    const multi_series b = rnd.series(chart::u, 0, 1, 2, 2);
    const multi_series beta = rnd.series(chart::v, 0, 1, 2, 2);
    const rational lambda = rnd.coefficient();
    const multi_series sum = x.p + b.shifted_z(j) + substitute(beta, t.forward, p).shifted_z(-j);
    return extension_class{j, sum.scaled(1 / lambda)};
  };
  const int n = std::max(1, cfg.property_cases / 4);
  std::vector<std::string> refl, sym, trans;
  for (int c = 0; c < n; ++c) {
    const extension_class a{j, rnd.series(chart::u, -1, 1, 2, 2)};
    const extension_class b = move(a);
    const extension_class e = move(b);
    if (!shift_equivalent(a, a, spec, cfg.window).equivalent) refl.push_back(a.p.render());
    if (!shift_equivalent(a, b, spec, cfg.window).equivalent || !shift_equivalent(b, a, spec, cfg.window).equivalent)
      sym.push_back(a.p.render() + " ~ " + b.p.render());
    if (!shift_equivalent(a, e, spec, cfg.window).equivalent) trans.push_back(a.p.render() + " ~ " + e.p.render());
  }
  return {tally("shift-equivalence reflexive", n, refl), tally("shift-equivalence symmetric", n, sym),
          tally("shift-equivalence transitive", n, trans)};
}

std::vector<check_result> properties(const suite_config& cfg) {
  std::vector<check_result> out;
  for (auto part : {round_trips(cfg), substitution_laws(cfg), idempotence(cfg), shift_laws(cfg)})
    out.insert(out.end(), part.begin(), part.end());
  return out;
}

}  // namespace

std::vector<criterion> property_criteria() { return {{16, "property suites", 3, properties}}; }

}  // namespace wk::suite

#include <benchmark/benchmark.h>

#include "wk/bundles.hpp"
#include "wk/cech.hpp"

using namespace wk;

namespace {

bundle_factory tangent(threefold_spec s) {
  return [s](truncation_policy w) { return tangent_jacobian(s, truncation_policy::wide(w.u_deg_max)); };
}

void bm_h1_basis_w3(benchmark::State& state) {
  const truncation_policy t{static_cast<int>(state.range(0)), -12, 12};
  for (auto _ : state) benchmark::DoNotOptimize(h1_basis(tangent(threefold_spec::w(3)), t, {4, false}).dimension());
}
BENCHMARK(bm_h1_basis_w3)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

void bm_h1_basis_w2y(benchmark::State& state) {
  const truncation_policy t{6, -12, 12};
  const auto spec = threefold_spec::w2_y(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(h1_basis(tangent(spec), t, {4, false}).dimension());
}
BENCHMARK(bm_h1_basis_w2y)->DenseRange(2, 6, 2)->Unit(benchmark::kMillisecond);

void bm_substitute_inverse(benchmark::State& state) {
  const auto w = truncation_policy::wide(static_cast<int>(state.range(0)));
  const auto t = build_transition(threefold_spec::w2_y(2), w);
  const auto f = parse_series("z^-3 u1^2 + 2 z u1 u2 + z^-1 u2^3 + u1", chart::u, w);
  for (auto _ : state) benchmark::DoNotOptimize(substitute(f, t.inverse_rule()).size());
}
BENCHMARK(bm_substitute_inverse)->DenseRange(2, 8, 2);

void bm_coboundary_decision(benchmark::State& state) {
  const cech_engine e(tangent_jacobian(threefold_spec::w(3), truncation_policy::wide(4)), {4, -12, 12});
  const cochain sigma{parse_series("z^-2 u1", chart::u, truncation_policy::wide(4)),
                      parse_series("z^-1 u2^2 + z^-3 u1 u2", chart::u, truncation_policy::wide(4)),
                      parse_series("z^-1 u2", chart::u, truncation_policy::wide(4))};
  benchmark::DoNotOptimize(e.normal_form(sigma));  // warm the shared echelon
  for (auto _ : state) benchmark::DoNotOptimize(e.is_coboundary(sigma).coboundary);
}
BENCHMARK(bm_coboundary_decision)->Unit(benchmark::kMicrosecond);

void bm_sparse_echelon(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    sparse_echelon<int> ech;
    for (int i = 0; i < n; ++i) {
      // Banded rows, like the principal-part systems of the engine.
      sparse_vector<int> v;
      v[i] = rational(i + 1);
      v[i + 1] = rational(1, 2);
      v[i + 3] = rational(-2);
      benchmark::DoNotOptimize(ech.insert(i, v));
    }
  }
}
BENCHMARK(bm_sparse_echelon)->RangeMultiplier(4)->Range(16, 1024);

}  // namespace

BENCHMARK_MAIN();

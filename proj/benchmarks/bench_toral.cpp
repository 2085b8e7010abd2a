#include <benchmark/benchmark.h>

#include "toral/bounds.hpp"
#include "toral/cohomology.hpp"
#include "toral/correlation.hpp"
#include "toral/polynomial.hpp"
#include "toral/transfer.hpp"
#include "toral/ulam.hpp"

namespace {

using namespace toral;

// Companion matrix of x^d - x - 1, hyperbolic for the sizes used here.
IntMatrix companion(std::size_t d) {
  IntMatrix m(d);
  for (std::size_t i = 1; i < d; ++i) m(i, i - 1) = 1;
  m(0, d - 1) = 1;
  m(1, d - 1) = 1;
  return m;
}

void BM_CharacteristicPolynomial(benchmark::State& state) {
  const auto m = to_rational(companion(static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(characteristic_polynomial(m));
}
BENCHMARK(BM_CharacteristicPolynomial)->Arg(3)->Arg(5)->Arg(8);

void BM_InducedAction(benchmark::State& state) {
  const auto t = validate_automorphism(companion(5));
  const auto l = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(induced_action(t, l));
}
BENCHMARK(BM_InducedAction)->DenseRange(1, 3);

void BM_ResonanceReport(benchmark::State& state) {
  const auto t = validate_automorphism(companion(static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(resonance_report(t));
}
BENCHMARK(BM_ResonanceReport)->Arg(3)->Arg(5);

void BM_Pushforward(benchmark::State& state) {
  const auto t = validate_automorphism(make_int_matrix({{2, 1}, {1, 1}}));
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(pushforward_matrix(t, k));
}
BENCHMARK(BM_Pushforward)->Arg(16)->Arg(64)->Arg(256);

void BM_CorrelateExact(benchmark::State& state) {
  const auto t = validate_automorphism(make_int_matrix({{2, 1}, {1, 1}}));
  const auto phi = TrigObservable::cosine({5, 3});
  const auto psi = TrigObservable::cosine({2, 1});
  for (auto _ : state) benchmark::DoNotOptimize(correlate_exact(t, phi, psi, 50));
}
BENCHMARK(BM_CorrelateExact);

void BM_CorrelateMonteCarlo(benchmark::State& state) {
  const auto t = validate_automorphism(make_int_matrix({{2, 1}, {1, 1}}));
  const auto obs = TrigObservable::cosine({1, 0});
  const Observable f = [obs](std::span<const double> x) { return obs(x); };
  MonteCarloOptions opts;
  opts.samples = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(correlate_mc(linear_torus_map(t), 2, f, f, 10, opts));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_CorrelateMonteCarlo)->Arg(100'000)->Unit(benchmark::kMillisecond);

void BM_Ulam(benchmark::State& state) {
  const auto t = validate_automorphism(make_int_matrix({{2, 1}, {1, 1}}));
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    const auto u = ulam_discretize(linear_torus_map(t), 2, n, 20, 7);
    benchmark::DoNotOptimize(ulam_spectrum(u, 6));
  }
}
BENCHMARK(BM_Ulam)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

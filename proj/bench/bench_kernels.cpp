// Serial reference against the OpenMP path for the data-parallel kernels.
// The second argument of each benchmark selects the path: 0 serial, 1 parallel.
#include <benchmark/benchmark.h>

#include <vector>

#include "prodspec/intervals.hpp"
#include "prodspec/qpcocycle.hpp"
#include "prodspec/randspec.hpp"
#include "prodspec/rng.hpp"
#include "prodspec/symdyn.hpp"
#include "prodspec/tracemap.hpp"

using namespace prodspec;

namespace {

Exec exec_of(const benchmark::State& st) { return st.range(1) == 0 ? Exec::serial : Exec::parallel; }

std::vector<double> grid(double a, double b, int n) {
  std::vector<double> v;
  for (int i = 0; i < n; ++i) v.push_back(a + (b - a) * i / (n - 1));
  return v;
}

void BM_PeriodicBands(benchmark::State& st) {
  CounterRng rng(7);
  const std::vector<double> probs{0.5, 0.5};
  const Word w = random_word(probs, static_cast<std::size_t>(st.range(0)), rng);
  std::vector<double> V(w.begin(), w.end());
  for (auto _ : st) benchmark::DoNotOptimize(periodic_bands(V, 1e-12, exec_of(st)));
}
BENCHMARK(BM_PeriodicBands)->ArgsProduct({{200, 1000}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_LyapunovScan(benchmark::State& st) {
  const std::vector<double> probs{0.5, 0.5};
  const std::vector<std::vector<double>> g{{0.0, 0.5}, {1.0, 1.5}};
  const std::vector<double> E = grid(-2.0, 3.5, static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(lyapunov_positivity_scan(probs, g, 2, E, 100000, 1, exec_of(st)));
}
BENCHMARK(BM_LyapunovScan)->ArgsProduct({{16}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_ToeplitzMask(benchmark::State& st) {
  const CodingSequence pd = CodingSequence::alternating_binary(std::vector<int>{2}, 40);
  const DecoratedSampling dec = DecoratedSampling::separable(std::vector<double>{0.0, 1.0}, std::vector<double>{0.0, 0.5});
  const std::vector<double> E = grid(-3.0, 4.5, static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(toeplitz_spectrum_mask(pd, dec, E, 4, 30, exec_of(st)));
}
BENCHMARK(BM_ToeplitzMask)->ArgsProduct({{7501}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_RationalApprox(benchmark::State& st) {
  const TrigPolyTuple f = amo_with_background(1.0, std::vector<double>{0.0, 0.3});
  const auto cv = convergents(ContinuedFraction::golden(30));
  const Convergent pq = cv[static_cast<std::size_t>(st.range(0))];
  for (auto _ : st) benchmark::DoNotOptimize(rational_approx_spectrum(f, pq, 1e-12, 64, exec_of(st)));
}
BENCHMARK(BM_RationalApprox)->ArgsProduct({{6, 8}, {0, 1}})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

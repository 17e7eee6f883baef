#include <random>

#include <benchmark/benchmark.h>

#include "bohr/auxiliary.hpp"
#include "bohr/equivalence.hpp"
#include "bohr/reference_sums.hpp"

namespace {

using namespace bohr;

ExponentialSum random_sum(std::mt19937_64& rng, std::size_t k, std::size_t j) {
  std::uniform_int_distribution<std::int64_t> entry(-3, 3);
  std::uniform_real_distribution<double> mod(0.1, 3.0), arg(-3.14, 3.14);
  std::vector<Term> terms;
  for (std::size_t i = 0; i < j; ++i) {
    IntVector r(k);
    for (auto& e : r) e = entry(rng);
    terms.push_back({std::polar(mod(rng), arg(rng)), ExponentVector{r}});
  }
  static const std::vector<std::int64_t> primes{2, 3, 5, 7};
  return ExponentialSum::make(BasisSpec::log_integers({primes.begin(), primes.begin() + static_cast<long>(k)}),
                              std::move(terms));
}

void BM_Evaluate(benchmark::State& state) {
  const auto f = reference::f1();
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(evaluate(f, Complex(0.1, t)));
    t += 0.01;
  }
}
BENCHMARK(BM_Evaluate);

void BM_SampleImageGrid(benchmark::State& state) {
  const auto f = reference::f1();
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sample_image(f, 0.0, GridSampler{n}));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n * n * n));
}
BENCHMARK(BM_SampleImageGrid)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_SampleImageQuasiRandom(benchmark::State& state) {
  const auto f = reference::f1();
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sample_image(f, 0.0, QuasiRandomSampler{n, 1}));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SampleImageQuasiRandom)->Arg(1 << 16)->Arg(1 << 20)->Unit(benchmark::kMillisecond);

void BM_Hausdorff(benchmark::State& state) {
  const auto f1 = reference::f1();
  const auto f2 = reference::f2();
  const auto n = static_cast<std::size_t>(state.range(0));
  const ImageCloud a = sample_image(f1, 0.0, GridSampler{n});
  const ImageCloud b = sample_image(f2, -0.1, GridSampler{n});
  for (auto _ : state) benchmark::DoNotOptimize(hausdorff(a, b));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(a.size() + b.size()));
}
BENCHMARK(BM_Hausdorff)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_LeftKernel(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto j = static_cast<std::size_t>(state.range(0));
  std::uniform_int_distribution<std::int64_t> entry(-5, 5);
  std::vector<ExponentVector> rows(j, ExponentVector{IntVector(3)});
  for (auto& r : rows) {
    for (auto& e : r.coords) e = entry(rng);
  }
  for (auto _ : state) benchmark::DoNotOptimize(left_kernel(rows));
}
BENCHMARK(BM_LeftKernel)->Arg(4)->Arg(8)->Arg(16);

void BM_CheckEquivalence(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const ExponentialSum a = random_sum(rng, 3, static_cast<std::size_t>(state.range(0)));
  const std::vector<double> x{0.3, -1.2, 2.0};
  const ExponentialSum b = twist(a, x);
  for (auto _ : state) benchmark::DoNotOptimize(check_equivalence(a, b));
}
BENCHMARK(BM_CheckEquivalence)->Arg(6)->Arg(24);

void BM_BruteForce(benchmark::State& state) {
  const auto f1 = reference::f1();
  const auto f2 = reference::f2();
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_equivalence(f1, f2, 64));
}
BENCHMARK(BM_BruteForce)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

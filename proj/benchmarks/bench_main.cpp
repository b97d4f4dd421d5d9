#include <random>
#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "marketreg/distributions.hpp"
#include "marketreg/ols.hpp"
#include "marketreg/qr.hpp"
#include "marketreg/selection.hpp"

using namespace marketreg;

namespace {

Matrix random_design(std::size_t n, std::size_t p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> z;
  Matrix x(n, p);
  for (std::size_t i = 0; i < n; ++i) {
    x(i, 0) = 1.0;
    for (std::size_t j = 1; j < p; ++j) x(i, j) = z(rng);
  }
  return x;
}

EncodedDataset random_dataset(std::size_t n, std::size_t p, std::uint64_t seed) {
  EncodedDataset d;
  d.design = random_design(n, p, seed);
  std::mt19937_64 rng(seed + 1);
  std::normal_distribution<double> z;
  d.response.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    d.response[i] = 50.0 + 4.0 * z(rng);
    for (std::size_t j = 1; j < p; j += 3) d.response[i] += d.design(i, j);
  }
  for (std::size_t j = 0; j < p; ++j) {
    ColumnMeta m;
    m.name = j == 0 ? "const" : "x" + std::to_string(j);
    m.kind = j == 0 ? ColumnKind::bias : ColumnKind::continuous;
    m.source_attribute = m.name;
    d.columns.push_back(m);
  }
  return d;
}

void BM_QrPivoted(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto p = static_cast<std::size_t>(state.range(1));
  const Matrix x = random_design(n, p, 1);
  for (auto _ : state) benchmark::DoNotOptimize(qr_pivoted(x));
}
BENCHMARK(BM_QrPivoted)->Args({105, 20})->Args({105, 100})->Args({1000, 100});

void BM_FitOls(benchmark::State& state) {
  const auto p = static_cast<std::size_t>(state.range(0));
  const EncodedDataset d = random_dataset(105, p, 2);
  for (auto _ : state) benchmark::DoNotOptimize(fit_ols(d));
}
BENCHMARK(BM_FitOls)->Arg(25)->Arg(53)->Arg(100);

void BM_BackwardEliminate(benchmark::State& state) {
  const auto p = static_cast<std::size_t>(state.range(0));
  const EncodedDataset d = random_dataset(105, p, 3);
  for (auto _ : state) benchmark::DoNotOptimize(backward_eliminate(d, 0.05));
}
BENCHMARK(BM_BackwardEliminate)->Arg(30)->Arg(90)->Unit(benchmark::kMillisecond);

void BM_TTwoSided(benchmark::State& state) {
  double t = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(t_two_sided_p(t, 52.0).value());
    t = t > 8.0 ? 0.1 : t + 0.37;
  }
}
BENCHMARK(BM_TTwoSided);

void BM_FSf(benchmark::State& state) {
  double f = 0.2;
  for (auto _ : state) {
    benchmark::DoNotOptimize(f_sf(f, 52.0, 52.0).value());
    f = f > 20.0 ? 0.2 : f + 0.53;
  }
}
BENCHMARK(BM_FSf);

void BM_Chi2Sf(benchmark::State& state) {
  double x = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(chi2_sf(x, 25.0).value());
    x = x > 80.0 ? 0.1 : x + 1.1;
  }
}
BENCHMARK(BM_Chi2Sf);

void BM_TQuantile(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(t_quantile(0.975, 52.0));
}
BENCHMARK(BM_TQuantile);

}  // namespace

BENCHMARK_MAIN();

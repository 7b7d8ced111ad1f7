// Microbenchmarks for the numeric hot paths. Data sizes mirror the Monte
// Carlo loads in the acceptance battery, not the (tiny) annual fixtures.

#include <benchmark/benchmark.h>

#include <vector>

#include "revcast/accuracy.hpp"
#include "revcast/arima.hpp"
#include "revcast/linreg.hpp"
#include "revcast/rng.hpp"
#include "revcast/series.hpp"
#include "revcast/stationarity.hpp"

namespace {

using revcast::AnnualSeries;

AnnualSeries random_walk(std::size_t n, std::uint64_t seed) {
  revcast::GaussianRng rng(seed);
  std::vector<double> level(n);
  double y = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    y += rng.normal();
    level[t] = y;
  }
  return AnnualSeries(1, std::move(level));
}

AnnualSeries arma11(std::size_t n, std::uint64_t seed) {
  revcast::GaussianRng rng(seed);
  std::vector<double> w(n);
  double prev_w = 0.0;
  double prev_e = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    const double e = rng.normal();
    w[t] = 0.6 * prev_w + e + 0.3 * prev_e;
    prev_w = w[t];
    prev_e = e;
  }
  return AnnualSeries(1, std::move(w));
}

void bm_ols_fit(benchmark::State& state) {
  const std::size_t n = 200;
  revcast::GaussianRng rng(7);
  std::vector<std::vector<double>> columns(5, std::vector<double>(n));
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    columns[0][i] = 1.0;
    for (std::size_t j = 1; j < columns.size(); ++j) {
      columns[j][i] = rng.normal();
    }
    y[i] = columns[1][i] - 0.5 * columns[2][i] + rng.normal();
  }
  const auto X = revcast::DesignMatrix::from_columns(
      {"const", "x1", "x2", "x3", "x4"}, columns);
  for (auto _ : state) {
    benchmark::DoNotOptimize(revcast::ols_fit(X, y));
  }
}
BENCHMARK(bm_ols_fit);

void bm_adf_test(benchmark::State& state) {
  const auto s = random_walk(200, 11);
  const auto spec = revcast::AdfSpec::defaults(s.size());
  for (auto _ : state) {
    benchmark::DoNotOptimize(revcast::adf_test(s, spec));
  }
}
BENCHMARK(bm_adf_test);

void bm_fit_arima_1_0_1(benchmark::State& state) {
  const auto s = arma11(200, 13);
  for (auto _ : state) {
    benchmark::DoNotOptimize(revcast::fit_arima(s, 1, 0, 1));
  }
}
BENCHMARK(bm_fit_arima_1_0_1);

void bm_acf(benchmark::State& state) {
  const auto s = arma11(2000, 17);
  for (auto _ : state) {
    benchmark::DoNotOptimize(revcast::acf(s, 20));
  }
}
BENCHMARK(bm_acf);

void bm_dm_test(benchmark::State& state) {
  revcast::GaussianRng rng(19);
  std::vector<double> a(200), b(200);
  for (std::size_t i = 0; i < a.size(); ++i) {
    a[i] = rng.normal();
    b[i] = 1.5 * rng.normal();
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        revcast::dm_test(a, b, 1, revcast::Loss::squared));
  }
}
BENCHMARK(bm_dm_test);

}  // namespace

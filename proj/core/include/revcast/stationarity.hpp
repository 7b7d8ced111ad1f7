#pragma once

#include <cstdint>
#include <map>

#include "revcast/series.hpp"

namespace revcast {

enum class Deterministic { none, constant, constant_and_trend };
enum class LagSelection { fixed, aic };

struct AdfSpec {
  Deterministic deterministic = Deterministic::constant;
  int max_lag = 0;
  LagSelection lag_selection = LagSelection::fixed;

  /// Conventional defaults for a length-n series: constant term, AIC lag
  /// choice, max_lag = floor(12 * (n/100)^0.25) clamped to keep >= 12
  /// effective observations.
  static AdfSpec defaults(std::size_t n);
};

struct AdfResult {
  double tau_stat = 0.0;  // t-ratio on the lagged level
  int chosen_lag = 0;
  std::map<int, double> critical_values;  // {1,5,10} -> cv, monotone rising
  std::map<int, bool> reject_at;          // left tail: tau < cv
  std::size_t n_effective = 0;
};

/// Unit-root regression: delta-y on the lagged level, requested
/// deterministic terms, and chosen_lag lagged differences. Left-tailed:
/// rejection means the series looks stationary.
AdfResult adf_test(const AnnualSeries& s, const AdfSpec& spec);

struct DifferencingRecommendation {
  int d = 0;
  bool stationary = false;  // false: even d=2 failed to reject (warning)
};

/// Smallest d in {0,1,2} whose d-th difference rejects the unit root at
/// alpha_percent (one of 1, 5, 10).
DifferencingRecommendation recommend_d(const AnnualSeries& s,
                                       int alpha_percent, const AdfSpec& spec);

/// Embedded finite-sample critical value (response surface in 1/n) for the
/// tau statistic; level_percent in {1, 5, 10}.
double adf_critical_value(Deterministic deterministic, int level_percent,
                          std::size_t n_effective);

/// Monte-Carlo oracle: empirical {1,5,10}% tau quantiles under a simulated
/// random-walk null of the given length. Used to validate the embedded
/// response surface and available for recalibration.
std::map<int, double> adf_tau_quantiles(Deterministic deterministic,
                                        std::size_t series_length,
                                        std::size_t replications,
                                        std::uint64_t seed);

}  // namespace revcast

#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "revcast/series.hpp"

namespace revcast {

struct CorrelogramPoint {
  int lag = 0;
  double value = 0.0;
  double conf_band = 0.0;  // +-1.96/sqrt(n)
};

/// Sample autocorrelations for lags 0..max_lag (lag 0 is 1 by convention),
/// biased denominator over the full sample.
std::vector<CorrelogramPoint> acf(const AnnualSeries& s, int max_lag);

/// Partial autocorrelations via the Durbin-Levinson recursion on the sample
/// ACF; lag 0 is 1 by convention.
std::vector<CorrelogramPoint> pacf(const AnnualSeries& s, int max_lag);

struct ArimaModel {
  int p = 0, d = 0, q = 0;
  std::vector<double> ar_coeffs;  // phi
  std::vector<double> ma_coeffs;  // theta
  double intercept = 0.0;         // mean of the differenced process
  double sigma2 = 0.0;
  double log_css = 0.0;  // log of the attained conditional sum of squares
  std::size_t n_obs = 0;  // length of the series the model was fit on

  /// Conditional-sum-of-squares AIC with p + q + 2 parameters (mean and
  /// innovation variance included).
  double aic() const;
};

/// Conditional innovations for a differenced series under the model:
/// entries before index p are zero (the recursion conditions on them).
std::vector<double> arma_innovations(const ArimaModel& m,
                                     const std::vector<double>& w);

/// True when the polynomial 1 - c1 z - ... - cp z^p has all roots strictly
/// outside the unit circle (AR stationarity; pass -theta for MA coeffs).
bool roots_outside_unit_circle(const std::vector<double>& coeffs);

/// Difference d times, then minimize the conditional sum of squared
/// innovations over (mean, phi, theta) by multi-start Nelder-Mead, with
/// root-reflection keeping every evaluation stationary and invertible.
ArimaModel fit_arima(const AnnualSeries& s, int p, int d, int q);

/// Iterate the ARMA recursion with future innovations set to zero, then
/// integrate back to levels anchored on the trailing observations.
AnnualSeries forecast(const ArimaModel& m, const AnnualSeries& last_obs,
                      int horizon);

/// Grid-fit all (p,q) in [0,p_max] x [0,q_max] at fixed d and return the
/// AIC-minimizing pair (ties favor smaller p+q, then smaller q). AIC values
/// are compared on a common estimation window. jobs > 1 fits grid cells on
/// that many threads; the result does not depend on jobs.
std::pair<int, int> select_order(const AnnualSeries& s, int p_max, int d,
                                 int q_max, int jobs = 1);

}  // namespace revcast

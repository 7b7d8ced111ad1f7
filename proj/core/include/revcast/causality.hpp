#pragma once

#include <string>

#include "revcast/linreg.hpp"
#include "revcast/series.hpp"

namespace revcast {

struct GrangerResult {
  std::string cause;   // candidate cause (the x series)
  std::string effect;  // the y series
  int max_lag = 1;
  FTestResult f_test;
  bool causal_at_5pct = false;  // f_test.p_value < 0.05
};

/// Does x help predict y beyond y's own history? Restricted model: y_t on
/// intercept + y lags 1..max_lag; unrestricted adds x lags 1..max_lag; the
/// nested F-test judges the x-lag block. Series are trimmed to their common
/// years first. Stationarity is the caller's responsibility — nothing is
/// differenced here.
GrangerResult granger_test(const AnnualSeries& x, const AnnualSeries& y,
                           int max_lag, const std::string& cause_name = "x",
                           const std::string& effect_name = "y");

}  // namespace revcast

#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "revcast/series.hpp"

namespace revcast {

struct AccuracyReport {
  double me = 0.0;    // mean error, level units
  double mse = 0.0;   // mean squared error, squared level units
  double rmse = 0.0;  // sqrt(mse)
  double mae = 0.0;
  double mpe = 0.0;   // fractions, not percent (0.027 == 2.7%)
  double mape = 0.0;
  double smape = 0.0;  // denominator (|a|+|p|)/2, range [0,2]
  double theil_u1 = 0.0;
  std::size_t n = 0;
};

enum class Loss { squared, absolute };

struct DmResult {
  double dm_stat = 0.0;
  double p_value = 1.0;
  Loss loss = Loss::squared;
  int horizon = 1;
  bool small_sample_adjusted = false;
};

/// Full error battery on errors e_t = actual_t - predicted_t. Percentage
/// metrics divide by the actual, so any zero actual raises division-by-zero
/// naming the year.
AccuracyReport error_stats(const AnnualSeries& actual,
                           const AnnualSeries& predicted);

/// U1 = rmse / (sqrt(mean(actual^2)) + sqrt(mean(predicted^2))), in [0,1];
/// 0 means a perfect forecast.
double theil_u1(const AnnualSeries& actual, const AnnualSeries& predicted);

/// Equal-predictive-accuracy test on two forecast-error sequences. The loss
/// differential's variance is HAC-estimated with rectangular weights through
/// lag horizon-1. p-values come from the standard normal; with small_sample
/// the Harvey-Leybourne-Newbold correction rescales the statistic and uses a
/// t(n-1) reference instead.
DmResult dm_test(const std::vector<double>& errors_a,
                 const std::vector<double>& errors_b, int horizon, Loss loss,
                 bool small_sample = false);

struct ModelComparison {
  struct Entry {
    std::string name;
    AccuracyReport report;
  };
  struct Pairwise {
    std::string model_a;
    std::string model_b;
    DmResult dm;
  };
  std::vector<Entry> ranked;     // ascending rmse
  std::vector<Pairwise> dm_tests;  // all pairs, squared loss, horizon 1
};

/// Error battery for every named prediction against the same actuals,
/// ranked by rmse, plus all pairwise DM tests.
ModelComparison compare_models(
    const AnnualSeries& actual,
    const std::map<std::string, AnnualSeries>& named_predictions);

}  // namespace revcast

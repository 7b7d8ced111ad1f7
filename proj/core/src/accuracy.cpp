#include "revcast/accuracy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "revcast/errors.hpp"
#include "revcast/special.hpp"

namespace revcast {

namespace {

void check_alignment(const AnnualSeries& actual,
                     const AnnualSeries& predicted) {
  if (actual.start_year() != predicted.start_year() ||
      actual.size() != predicted.size()) {
    throw Error(ErrorCode::alignment_mismatch,
                "actual covers " + std::to_string(actual.start_year()) + ".." +
                    std::to_string(actual.end_year()) +
                    " but predicted covers " +
                    std::to_string(predicted.start_year()) + ".." +
                    std::to_string(predicted.end_year()));
  }
}

}  // namespace

AccuracyReport error_stats(const AnnualSeries& actual,
                           const AnnualSeries& predicted) {
  check_alignment(actual, predicted);
  const std::size_t n = actual.size();
  AccuracyReport r;
  r.n = n;
  double sum_e = 0.0, sum_e2 = 0.0, sum_abs = 0.0;
  double sum_pe = 0.0, sum_ape = 0.0, sum_sape = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    const double a = actual[t];
    const double p = predicted[t];
    const double e = a - p;
    sum_e += e;
    sum_e2 += e * e;
    sum_abs += std::fabs(e);
    if (a == 0.0) {
      throw Error(ErrorCode::division_by_zero,
                  "percentage metrics undefined: actual is zero in year " +
                      std::to_string(actual.start_year() +
                                     static_cast<int>(t)));
    }
    sum_pe += e / a;
    sum_ape += std::fabs(e / a);
    const double scale = (std::fabs(a) + std::fabs(p)) / 2.0;
    sum_sape += scale == 0.0 ? 0.0 : std::fabs(e) / scale;
  }
  const double dn = static_cast<double>(n);
  r.me = sum_e / dn;
  r.mse = sum_e2 / dn;
  r.rmse = std::sqrt(r.mse);
  r.mae = sum_abs / dn;
  r.mpe = sum_pe / dn;
  r.mape = sum_ape / dn;
  r.smape = sum_sape / dn;
  r.theil_u1 = theil_u1(actual, predicted);
  return r;
}

double theil_u1(const AnnualSeries& actual, const AnnualSeries& predicted) {
  check_alignment(actual, predicted);
  const std::size_t n = actual.size();
  double sum_e2 = 0.0, sum_a2 = 0.0, sum_p2 = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    const double e = actual[t] - predicted[t];
    sum_e2 += e * e;
    sum_a2 += actual[t] * actual[t];
    sum_p2 += predicted[t] * predicted[t];
  }
  if (sum_a2 == 0.0 && sum_p2 == 0.0) {
    throw Error(ErrorCode::degenerate_series,
                "both series are identically zero");
  }
  const double dn = static_cast<double>(n);
  return std::sqrt(sum_e2 / dn) /
         (std::sqrt(sum_a2 / dn) + std::sqrt(sum_p2 / dn));
}

DmResult dm_test(const std::vector<double>& errors_a,
                 const std::vector<double>& errors_b, int horizon, Loss loss,
                 bool small_sample) {
  if (errors_a.size() != errors_b.size()) {
    throw Error(ErrorCode::arity_mismatch,
                "error sequences differ in length: " +
                    std::to_string(errors_a.size()) + " vs " +
                    std::to_string(errors_b.size()));
  }
  const std::size_t n = errors_a.size();
  if (n < 4) {
    throw Error(ErrorCode::insufficient_data,
                "DM test needs at least 4 errors, got " + std::to_string(n));
  }
  if (horizon < 1) {
    throw Error(ErrorCode::invalid_argument, "horizon must be at least 1");
  }

  std::vector<double> d(n);
  for (std::size_t t = 0; t < n; ++t) {
    if (loss == Loss::squared) {
      d[t] = errors_a[t] * errors_a[t] - errors_b[t] * errors_b[t];
    } else {
      d[t] = std::fabs(errors_a[t]) - std::fabs(errors_b[t]);
    }
  }
  double mean = 0.0;
  for (double v : d) mean += v;
  mean /= static_cast<double>(n);

  // HAC variance, rectangular weights through lag horizon-1 (centered
  // autocovariances with the 1/n convention).
  const std::size_t max_lag =
      std::min(static_cast<std::size_t>(horizon - 1), n - 1);
  double gamma0 = 0.0;
  for (double v : d) gamma0 += (v - mean) * (v - mean);
  gamma0 /= static_cast<double>(n);
  double variance = gamma0;
  for (std::size_t l = 1; l <= max_lag; ++l) {
    double gamma = 0.0;
    for (std::size_t t = l; t < n; ++t) {
      gamma += (d[t] - mean) * (d[t - l] - mean);
    }
    gamma /= static_cast<double>(n);
    variance += 2.0 * gamma;
  }
  if (variance <= 0.0) {
    variance = gamma0;  // rectangular weights can go negative; fall back
  }

  DmResult result;
  result.loss = loss;
  result.horizon = horizon;
  result.small_sample_adjusted = small_sample;
  if (gamma0 == 0.0) {
    // Identical losses in every period: no evidence either way.
    result.dm_stat = 0.0;
    result.p_value = 1.0;
    return result;
  }
  double stat = mean / std::sqrt(variance / static_cast<double>(n));
  if (small_sample) {
    const double dn = static_cast<double>(n);
    const double h = static_cast<double>(horizon);
    const double adj =
        (dn + 1.0 - 2.0 * h + h * (h - 1.0) / dn) / dn;
    stat *= std::sqrt(adj);
    result.dm_stat = stat;
    result.p_value = student_t_two_sided_p(stat, dn - 1.0);
    return result;
  }
  result.dm_stat = stat;
  result.p_value = 2.0 * (1.0 - normal_cdf(std::fabs(stat)));
  return result;
}

ModelComparison compare_models(
    const AnnualSeries& actual,
    const std::map<std::string, AnnualSeries>& named_predictions) {
  if (named_predictions.empty()) {
    throw Error(ErrorCode::insufficient_data, "no prediction series given");
  }
  ModelComparison out;
  for (const auto& [name, predicted] : named_predictions) {
    out.ranked.push_back({name, error_stats(actual, predicted)});
  }
  std::stable_sort(out.ranked.begin(), out.ranked.end(),
                   [](const ModelComparison::Entry& a,
                      const ModelComparison::Entry& b) {
                     return a.report.rmse < b.report.rmse;
                   });
  auto errors_of = [&](const std::string& name) {
    const AnnualSeries& p = named_predictions.at(name);
    std::vector<double> e(actual.size());
    for (std::size_t t = 0; t < actual.size(); ++t) e[t] = actual[t] - p[t];
    return e;
  };
  for (std::size_t i = 0; i < out.ranked.size(); ++i) {
    for (std::size_t j = i + 1; j < out.ranked.size(); ++j) {
      const std::string& a = out.ranked[i].name;
      const std::string& b = out.ranked[j].name;
      out.dm_tests.push_back(
          {a, b, dm_test(errors_of(a), errors_of(b), 1, Loss::squared)});
    }
  }
  return out;
}

}  // namespace revcast

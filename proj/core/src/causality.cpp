#include "revcast/causality.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "revcast/errors.hpp"

namespace revcast {

GrangerResult granger_test(const AnnualSeries& x, const AnnualSeries& y,
                           int max_lag, const std::string& cause_name,
                           const std::string& effect_name) {
  if (max_lag < 1) {
    throw Error(ErrorCode::invalid_argument, "max_lag must be at least 1");
  }
  const int first = std::max(x.start_year(), y.start_year());
  const int last = std::min(x.end_year(), y.end_year());
  if (first > last) {
    throw Error(ErrorCode::alignment_mismatch,
                "'" + cause_name + "' (" + std::to_string(x.start_year()) +
                    ".." + std::to_string(x.end_year()) + ") and '" +
                    effect_name + "' (" + std::to_string(y.start_year()) +
                    ".." + std::to_string(y.end_year()) +
                    ") share no years");
  }
  const std::size_t n = static_cast<std::size_t>(last - first + 1);
  const std::size_t lag = static_cast<std::size_t>(max_lag);
  if (n < 3 * lag + 10) {
    throw Error(ErrorCode::insufficient_data,
                "granger test at lag " + std::to_string(max_lag) + " needs " +
                    std::to_string(3 * lag + 10) + " aligned years, got " +
                    std::to_string(n));
  }
  std::vector<double> xs(n), ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = x.at_year(first + static_cast<int>(i));
    ys[i] = y.at_year(first + static_cast<int>(i));
  }

  const std::size_t rows = n - lag;
  std::vector<double> response(ys.begin() + static_cast<long>(lag), ys.end());
  std::vector<std::string> names{"const"};
  std::vector<std::vector<double>> cols{std::vector<double>(rows, 1.0)};
  for (std::size_t j = 1; j <= lag; ++j) {
    names.push_back(effect_name + "_lag" + std::to_string(j));
    std::vector<double> col(rows);
    for (std::size_t i = 0; i < rows; ++i) col[i] = ys[lag + i - j];
    cols.push_back(std::move(col));
  }
  const RegressionFit restricted =
      ols_fit(DesignMatrix::from_columns(names, cols), response);

  for (std::size_t j = 1; j <= lag; ++j) {
    names.push_back(cause_name + "_lag" + std::to_string(j));
    std::vector<double> col(rows);
    for (std::size_t i = 0; i < rows; ++i) col[i] = xs[lag + i - j];
    cols.push_back(std::move(col));
  }
  const RegressionFit unrestricted =
      ols_fit(DesignMatrix::from_columns(names, cols), response);

  GrangerResult result;
  result.cause = cause_name;
  result.effect = effect_name;
  result.max_lag = max_lag;
  result.f_test = f_test_nested(restricted, unrestricted);
  result.causal_at_5pct = result.f_test.p_value < 0.05;
  return result;
}

}  // namespace revcast

#include "revcast/scenario.hpp"

#include <algorithm>
#include <string>

#include "revcast/errors.hpp"

namespace revcast {

namespace {

struct Window {
  int first = 0;
  int last = 0;  // == spec.base_year after validation
};

Window common_window(const ScenarioSpec& spec) {
  if (spec.drivers.empty()) {
    throw Error(ErrorCode::configuration, "scenario has no drivers");
  }
  if (spec.horizon < 1) {
    throw Error(ErrorCode::configuration, "horizon must be at least 1");
  }
  int first = spec.target_history.start_year();
  int last = spec.target_history.end_year();
  for (const auto& [name, history] : spec.drivers) {
    first = std::max(first, history.start_year());
    last = std::min(last, history.end_year());
  }
  if (first > last) {
    throw Error(ErrorCode::alignment_mismatch,
                "target and drivers share no historical years");
  }
  if (spec.base_year != last) {
    throw Error(ErrorCode::configuration,
                "base_year " + std::to_string(spec.base_year) +
                    " must be the last common historical year (" +
                    std::to_string(last) + ")");
  }
  return {first, last};
}

std::vector<double> window_values(const AnnualSeries& s, const Window& w) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(w.last - w.first + 1));
  for (int year = w.first; year <= w.last; ++year) {
    out.push_back(s.at_year(year));
  }
  return out;
}

}  // namespace

std::map<std::string, GrangerResult> screen_drivers(const ScenarioSpec& spec,
                                                    int max_lag) {
  common_window(spec);  // validate alignment before any testing
  const AnnualSeries d_target = difference(spec.target_history, 1);
  std::map<std::string, GrangerResult> out;
  for (const auto& [name, history] : spec.drivers) {
    out.emplace(name, granger_test(difference(history, 1), d_target, max_lag,
                                   name, spec.target_name));
  }
  return out;
}

RegressionFit fit_scenario(const ScenarioSpec& spec) {
  const Window window = common_window(spec);
  const std::size_t rows =
      static_cast<std::size_t>(window.last - window.first + 1);
  const std::size_t k = spec.drivers.size() + (spec.intercept ? 1u : 0u);
  if (rows < k + 3) {
    throw Error(ErrorCode::insufficient_data,
                "scenario regression needs at least " + std::to_string(k + 3) +
                    " common years, got " + std::to_string(rows));
  }
  std::vector<std::string> names;
  std::vector<std::vector<double>> cols;
  if (spec.intercept) {
    names.emplace_back("const");
    cols.emplace_back(rows, 1.0);
  }
  for (const auto& [name, history] : spec.drivers) {
    names.push_back(name);
    cols.push_back(window_values(history, window));
  }
  const std::vector<double> y = window_values(spec.target_history, window);
  return ols_fit(DesignMatrix::from_columns(std::move(names), cols), y);
}

ScenarioForecast project(const ScenarioSpec& spec, const RegressionFit& fit,
                         const std::map<std::string, GrangerResult>& screen) {
  const Window window = common_window(spec);
  const std::size_t expected_k =
      spec.drivers.size() + (spec.intercept ? 1u : 0u);
  if (fit.n_params != expected_k) {
    throw Error(ErrorCode::arity_mismatch,
                "fit has " + std::to_string(fit.n_params) +
                    " parameters but the scenario implies " +
                    std::to_string(expected_k));
  }
  const std::size_t rows =
      static_cast<std::size_t>(window.last - window.first + 1);
  const std::size_t h = static_cast<std::size_t>(spec.horizon);

  // Future driver levels by compounding from the base-year level.
  std::vector<std::string> names;
  std::vector<std::vector<double>> future_cols;
  if (spec.intercept) {
    names.emplace_back("const");
    future_cols.emplace_back(h, 1.0);
  }
  std::map<std::string, AnnualSeries> driver_levels;
  for (const auto& [name, history] : spec.drivers) {
    const auto path_it = spec.driver_paths.find(name);
    if (path_it == spec.driver_paths.end()) {
      throw Error(ErrorCode::configuration,
                  "driver '" + name + "' has no growth path");
    }
    const GrowthPath& path = path_it->second;
    if (path.start_year() != spec.base_year + 1 || path.size() < h) {
      throw Error(ErrorCode::configuration,
                  "growth path for '" + name + "' must start in " +
                      std::to_string(spec.base_year + 1) + " and cover " +
                      std::to_string(spec.horizon) + " years");
    }
    const GrowthPath trimmed(
        path.start_year(),
        std::vector<double>(path.rates().begin(),
                            path.rates().begin() + static_cast<long>(h)));
    const AnnualSeries future =
        apply_growth_path(history.at_year(spec.base_year), trimmed);
    names.push_back(name);
    future_cols.push_back(future.values());

    // Stitch window history and projection into one labeled series.
    std::vector<double> full = window_values(history, window);
    full.insert(full.end(), future.values().begin(), future.values().end());
    driver_levels.emplace(
        name, AnnualSeries(window.first, std::move(full), history.unit()));
  }
  const DesignMatrix X_future = DesignMatrix::from_columns(names, future_cols);
  AnnualSeries projected(spec.base_year + 1, predict(fit, X_future));

  // In-sample pass over the same window the fit used.
  std::vector<std::vector<double>> hist_cols;
  if (spec.intercept) hist_cols.emplace_back(rows, 1.0);
  for (const auto& [name, history] : spec.drivers) {
    hist_cols.push_back(window_values(history, window));
  }
  const DesignMatrix X_hist = DesignMatrix::from_columns(names, hist_cols);
  std::vector<double> predicted = predict(fit, X_hist);
  std::vector<double> resid(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    resid[i] = spec.target_history.at_year(window.first + static_cast<int>(i)) -
               predicted[i];
  }
  return ScenarioForecast{
      fit,
      AnnualSeries(window.first, std::move(predicted)),
      AnnualSeries(window.first, std::move(resid)),
      std::move(projected),
      std::move(driver_levels),
      screen,
      spec.base_year,
      spec.target_history.at_year(spec.base_year)};
}

GrowthSummary summarize_growth(const ScenarioForecast& f) {
  GrowthSummary summary;
  summary.base_year = f.base_year;
  summary.base_level = f.base_actual;
  if (f.base_actual == 0.0) {
    throw Error(ErrorCode::division_by_zero,
                "base-year level is zero; growth is undefined");
  }
  double previous = f.base_actual;
  for (std::size_t i = 0; i < f.projected_levels.size(); ++i) {
    const int year = f.projected_levels.start_year() + static_cast<int>(i);
    if (previous == 0.0) {
      throw Error(ErrorCode::division_by_zero,
                  "zero level in year " + std::to_string(year - 1) +
                      "; growth is undefined");
    }
    summary.yearly.emplace_back(year, f.projected_levels[i] / previous - 1.0);
    previous = f.projected_levels[i];
  }
  summary.cumulative =
      f.projected_levels[f.projected_levels.size() - 1] / f.base_actual - 1.0;
  return summary;
}

}  // namespace revcast

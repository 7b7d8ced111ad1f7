#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "revcast/causality.hpp"
#include "revcast/linreg.hpp"
#include "revcast/series.hpp"

namespace revcast {

/// A conditional-forecast problem: regress the target's history on driver
/// levels, then push assumed driver growth paths through the fitted law.
/// base_year must be the last year target and all drivers share; paths must
/// start at base_year + 1 and cover the horizon.
struct ScenarioSpec {
  std::string target_name;
  AnnualSeries target_history{0, {0.0}};  // placeholder until assigned
  std::vector<std::pair<std::string, AnnualSeries>> drivers;  // ordered
  std::map<std::string, GrowthPath> driver_paths;
  int base_year = 0;
  int horizon = 0;
  bool intercept = true;
};

struct ScenarioForecast {
  RegressionFit fitted;
  AnnualSeries in_sample_predicted;  // estimation window
  AnnualSeries residuals;            // target - predicted, same window
  AnnualSeries projected_levels;     // base_year+1 .. base_year+horizon
  std::map<std::string, AnnualSeries> driver_levels;  // window + projection
  std::map<std::string, GrangerResult> granger_screen;  // empty if skipped
  int base_year = 0;
  double base_actual = 0.0;  // target level at base_year
};

/// Granger-screen every driver against the target on first differences
/// (levels are unit-root territory). A non-causal driver is flagged, never
/// removed — dropping it is a caller decision.
std::map<std::string, GrangerResult> screen_drivers(const ScenarioSpec& spec,
                                                    int max_lag);

/// OLS of target levels on contemporaneous driver levels over the common
/// window (plus an intercept when spec.intercept).
RegressionFit fit_scenario(const ScenarioSpec& spec);

/// Compound each driver forward from its base-year level, predict the
/// target on those future levels, and assemble the full forecast. The
/// screen argument is stored as-is (screening may be infeasible on short
/// windows, so it is not recomputed here).
ScenarioForecast project(
    const ScenarioSpec& spec, const RegressionFit& fit,
    const std::map<std::string, GrangerResult>& screen = {});

struct GrowthSummary {
  int base_year = 0;
  double base_level = 0.0;
  std::vector<std::pair<int, double>> yearly;  // year -> growth fraction
  double cumulative = 0.0;  // last projection vs base level, minus 1
};

/// Year-on-year growth of the projections, seeded by the base-year actual,
/// plus the cumulative ratio against the base year.
GrowthSummary summarize_growth(const ScenarioForecast& f);

}  // namespace revcast

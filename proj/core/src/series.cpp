#include "revcast/series.hpp"

#include <cmath>
#include <string>

#include "revcast/errors.hpp"

namespace revcast {

AnnualSeries::AnnualSeries(int start_year, std::vector<double> values,
                           UnitTag unit)
    : start_year_(start_year), values_(std::move(values)), unit_(unit) {
  if (values_.empty()) {
    throw Error(ErrorCode::insufficient_data,
                "an annual series needs at least one value");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw Error(ErrorCode::invalid_argument,
                  "non-finite value at year " +
                      std::to_string(start_year_ + static_cast<int>(i)));
    }
  }
}

bool AnnualSeries::covers_year(int year) const {
  return year >= start_year_ && year <= end_year();
}

double AnnualSeries::at_year(int year) const {
  if (!covers_year(year)) {
    throw Error(ErrorCode::invalid_argument,
                "year " + std::to_string(year) + " outside series coverage " +
                    std::to_string(start_year_) + ".." +
                    std::to_string(end_year()));
  }
  return values_[static_cast<std::size_t>(year - start_year_)];
}

GrowthPath::GrowthPath(int start_year, std::vector<double> rates)
    : start_year_(start_year), rates_(std::move(rates)) {
  for (std::size_t i = 0; i < rates_.size(); ++i) {
    if (!std::isfinite(rates_[i]) || rates_[i] <= -1.0) {
      throw Error(ErrorCode::invalid_argument,
                  "growth rate for year " +
                      std::to_string(start_year_ + static_cast<int>(i)) +
                      " must be a finite fraction > -1");
    }
  }
}

AnnualSeries difference(const AnnualSeries& s, int d) {
  if (d < 0) {
    throw Error(ErrorCode::invalid_argument,
                "differencing order must be non-negative");
  }
  if (s.size() <= static_cast<std::size_t>(d)) {
    throw Error(ErrorCode::insufficient_data,
                "cannot take " + std::to_string(d) + " differences of " +
                    std::to_string(s.size()) + " values");
  }
  std::vector<double> work = s.values();
  for (int pass = 0; pass < d; ++pass) {
    for (std::size_t t = 0; t + 1 < work.size(); ++t) {
      work[t] = work[t + 1] - work[t];
    }
    work.pop_back();
  }
  return AnnualSeries(s.start_year() + d, std::move(work), s.unit());
}

AnnualSeries integrate(const std::vector<double>& diffs, int diffs_start_year,
                       const std::vector<double>& anchors, UnitTag unit) {
  if (anchors.empty()) {
    if (diffs.empty()) {
      throw Error(ErrorCode::insufficient_data,
                  "nothing to integrate: no differences and no anchors");
    }
    return AnnualSeries(diffs_start_year, diffs, unit);
  }
  const std::size_t d = anchors.size();
  // Undo one differencing pass per anchor, innermost first. The starting
  // value of the k-th difference series is the k-th forward difference of
  // the anchor block.
  std::vector<double> current = diffs;
  for (std::size_t level = d; level-- > 0;) {
    std::vector<double> head(anchors.begin(),
                             anchors.begin() + static_cast<long>(level) + 1);
    for (std::size_t pass = 0; pass < level; ++pass) {
      for (std::size_t t = 0; t + 1 < head.size(); ++t) {
        head[t] = head[t + 1] - head[t];
      }
      head.pop_back();
    }
    std::vector<double> undone;
    undone.reserve(current.size() + 1);
    undone.push_back(head.front());
    for (double delta : current) {
      undone.push_back(undone.back() + delta);
    }
    current = std::move(undone);
  }
  return AnnualSeries(diffs_start_year - static_cast<int>(d),
                      std::move(current), unit);
}

AnnualSeries integrate(const AnnualSeries& diffs,
                       const std::vector<double>& anchors) {
  return integrate(diffs.values(), diffs.start_year(), anchors, diffs.unit());
}

AnnualSeries pct_change(const AnnualSeries& s) {
  if (s.size() < 2) {
    throw Error(ErrorCode::insufficient_data,
                "growth rates need at least two values");
  }
  std::vector<double> rates;
  rates.reserve(s.size() - 1);
  for (std::size_t t = 1; t < s.size(); ++t) {
    if (s[t - 1] == 0.0) {
      throw Error(ErrorCode::division_by_zero,
                  "zero level in year " +
                      std::to_string(s.start_year() + static_cast<int>(t) - 1));
    }
    rates.push_back(s[t] / s[t - 1] - 1.0);
  }
  return AnnualSeries(s.start_year() + 1, std::move(rates), UnitTag::rate);
}

AnnualSeries apply_growth_path(double base_level, const GrowthPath& path) {
  if (!std::isfinite(base_level)) {
    throw Error(ErrorCode::invalid_argument, "base level must be finite");
  }
  if (path.size() == 0) {
    throw Error(ErrorCode::insufficient_data, "growth path is empty");
  }
  std::vector<double> levels;
  levels.reserve(path.size());
  double level = base_level;
  for (double rate : path.rates()) {
    level *= 1.0 + rate;
    levels.push_back(level);
  }
  return AnnualSeries(path.start_year(), std::move(levels), UnitTag::level);
}

}  // namespace revcast

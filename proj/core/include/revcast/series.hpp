#pragma once

#include <cstddef>
#include <vector>

namespace revcast {

// Advisory metadata only: arithmetic never inspects the tag, but reports and
// plots label values with it.
enum class UnitTag { level, rate };

/// Contiguous year-indexed sequence of finite reals. Immutable once built;
/// safe to share across threads. Years are plain integers — everything in
/// this toolkit is strictly annual.
class AnnualSeries {
 public:
  AnnualSeries(int start_year, std::vector<double> values,
               UnitTag unit = UnitTag::level);

  int start_year() const { return start_year_; }
  int end_year() const { return start_year_ + static_cast<int>(size()) - 1; }
  std::size_t size() const { return values_.size(); }
  const std::vector<double>& values() const { return values_; }
  UnitTag unit() const { return unit_; }

  double operator[](std::size_t index) const { return values_[index]; }
  bool covers_year(int year) const;
  double at_year(int year) const;  // throws invalid-argument outside coverage

  friend bool operator==(const AnnualSeries&, const AnnualSeries&) = default;

 private:
  int start_year_;
  std::vector<double> values_;
  UnitTag unit_;
};

/// Assumed future growth, one dimensionless fraction per year
/// (0.0763 == 7.63%). Each rate must exceed −1.
class GrowthPath {
 public:
  GrowthPath(int start_year, std::vector<double> rates);

  int start_year() const { return start_year_; }
  std::size_t size() const { return rates_.size(); }
  const std::vector<double>& rates() const { return rates_; }

  friend bool operator==(const GrowthPath&, const GrowthPath&) = default;

 private:
  int start_year_;
  std::vector<double> rates_;
};

/// d-th difference; output starts d years later and is d values shorter.
AnnualSeries difference(const AnnualSeries& s, int d);

/// Inverse of difference: rebuilds levels from a differenced series plus the
/// first d original values. integrate(difference(s, d), prefix(s, d)) == s.
AnnualSeries integrate(const AnnualSeries& diffs,
                       const std::vector<double>& anchors);

/// Span-based variant for the degenerate case of an empty differenced span
/// (an AnnualSeries cannot be empty). `diffs_start_year` is the year of the
/// first differenced value, i.e. the year after the last anchor.
AnnualSeries integrate(const std::vector<double>& diffs, int diffs_start_year,
                       const std::vector<double>& anchors,
                       UnitTag unit = UnitTag::level);

/// Year-over-year growth fractions (sₜ/sₜ₋₁ − 1), rate-tagged.
AnnualSeries pct_change(const AnnualSeries& s);

/// Compound base_level forward through the path:
/// value k = base_level · Π_{j≤k} (1 + rate_j).
AnnualSeries apply_growth_path(double base_level, const GrowthPath& path);

}  // namespace revcast

#include <cmath>
#include <vector>

#include "doctest.h"
#include "revcast/errors.hpp"
#include "revcast/series.hpp"

using revcast::AnnualSeries;
using revcast::Error;
using revcast::ErrorCode;
using revcast::GrowthPath;
using revcast::UnitTag;

namespace {

void check_code(const Error& e, ErrorCode code) { CHECK(e.code() == code); }

}  // namespace

TEST_CASE("annual series basics") {
  const AnnualSeries s(2010, {1.0, 2.0, 3.0});
  CHECK(s.start_year() == 2010);
  CHECK(s.end_year() == 2012);
  CHECK(s.size() == 3);
  CHECK(s.at_year(2011) == 2.0);
  CHECK(s.covers_year(2012));
  CHECK_FALSE(s.covers_year(2013));
  CHECK_THROWS_AS(s.at_year(2013), Error);

  CHECK_THROWS_AS(AnnualSeries(2000, {}), Error);
  try {
    AnnualSeries(2000, {1.0, std::nan("")});
    FAIL("expected invalid-argument");
  } catch (const Error& e) {
    check_code(e, ErrorCode::invalid_argument);
    CHECK(std::string(e.what()).find("2001") != std::string::npos);
  }
}

TEST_CASE("growth path validation") {
  const GrowthPath p(2020, {0.05, -0.02});
  CHECK(p.start_year() == 2020);
  CHECK(p.size() == 2);
  CHECK_THROWS_AS(GrowthPath(2020, {0.05, -1.0}), Error);
  CHECK_THROWS_AS(GrowthPath(2020, {std::nan("")}), Error);
}

TEST_CASE("first difference") {
  const AnnualSeries s(2000, {10.0, 12.0, 15.0, 19.0});
  const auto d1 = revcast::difference(s, 1);
  CHECK(d1.start_year() == 2001);
  CHECK(d1.values() == std::vector<double>{2.0, 3.0, 4.0});
}

TEST_CASE("second difference") {
  const AnnualSeries s(2000, {1.0, 3.0, 6.0, 10.0});
  const auto d2 = revcast::difference(s, 2);
  CHECK(d2.start_year() == 2002);
  CHECK(d2.values() == std::vector<double>{1.0, 1.0});
  // d = 0 is the identity
  CHECK(revcast::difference(s, 0) == s);
}

TEST_CASE("difference guards") {
  const AnnualSeries s(2000, {1.0, 2.0});
  try {
    revcast::difference(s, 2);
    FAIL("expected insufficient-data");
  } catch (const Error& e) {
    check_code(e, ErrorCode::insufficient_data);
  }
  try {
    revcast::difference(s, -1);
    FAIL("expected invalid-argument");
  } catch (const Error& e) {
    check_code(e, ErrorCode::invalid_argument);
  }
}

TEST_CASE("integrate inverts difference") {
  const AnnualSeries s(1995, {4.0, 9.0, 3.0, 8.0, 8.0, 12.0});
  for (int d = 1; d <= 2; ++d) {
    const auto diffs = revcast::difference(s, d);
    const std::vector<double> anchors(s.values().begin(),
                                      s.values().begin() + d);
    const auto rebuilt = revcast::integrate(diffs, anchors);
    CHECK(rebuilt.start_year() == 1995);
    CHECK(rebuilt.size() == s.size());
    for (std::size_t t = 0; t < s.size(); ++t) {
      CHECK(rebuilt[t] == doctest::Approx(s[t]).epsilon(1e-12));
    }
  }
}

TEST_CASE("integrate degenerate spans") {
  // No differenced values at all: the anchors are the whole series.
  const auto only_anchor = revcast::integrate(std::vector<double>{}, 2001,
                                              {7.0});
  CHECK(only_anchor.start_year() == 2000);
  CHECK(only_anchor.values() == std::vector<double>{7.0});

  // No anchors: differences are taken as already-integrated levels.
  const auto passthrough =
      revcast::integrate(std::vector<double>{1.0, 2.0}, 2005, {});
  CHECK(passthrough.start_year() == 2005);
  CHECK(passthrough.values() == std::vector<double>{1.0, 2.0});

  CHECK_THROWS_AS(revcast::integrate(std::vector<double>{}, 2005, {}), Error);
}

TEST_CASE("pct_change") {
  const AnnualSeries s(2010, {200.0, 150.0, 180.0});
  const auto g = revcast::pct_change(s);
  CHECK(g.start_year() == 2011);
  CHECK(g.unit() == UnitTag::rate);
  CHECK(g[0] == doctest::Approx(-0.25));
  CHECK(g[1] == doctest::Approx(0.20));

  try {
    revcast::pct_change(AnnualSeries(2010, {0.0, 1.0}));
    FAIL("expected division-by-zero");
  } catch (const Error& e) {
    check_code(e, ErrorCode::division_by_zero);
    CHECK(std::string(e.what()).find("2010") != std::string::npos);
  }
  CHECK_THROWS_AS(revcast::pct_change(AnnualSeries(2010, {5.0})), Error);
}

TEST_CASE("apply_growth_path compounds") {
  // The pension driver path: 15.79%, 18%, 0.43% on a base of 100.
  const GrowthPath path(2020, {0.1579, 0.18, 0.0043});
  const auto levels = revcast::apply_growth_path(100.0, path);
  CHECK(levels.start_year() == 2020);
  CHECK(levels[0] == doctest::Approx(115.79).epsilon(1e-4));
  CHECK(levels[1] == doctest::Approx(136.6322).epsilon(1e-4));
  CHECK(levels[2] == doctest::Approx(137.2197).epsilon(1e-4));
}

TEST_CASE("apply_growth_path is linear in the base") {
  const GrowthPath path(2020, {0.10, -0.05, 0.02});
  const auto one = revcast::apply_growth_path(1.0, path);
  const auto scaled = revcast::apply_growth_path(250.0, path);
  for (std::size_t t = 0; t < one.size(); ++t) {
    CHECK(scaled[t] == doctest::Approx(250.0 * one[t]).epsilon(1e-14));
  }
  CHECK_THROWS_AS(revcast::apply_growth_path(1.0, GrowthPath(2020, {})),
                  Error);
}

TEST_CASE("pct_change then apply_growth_path round-trips") {
  const AnnualSeries s(2010, {120.0, 132.0, 125.4, 150.48});
  const auto rates = revcast::pct_change(s);
  const GrowthPath path(rates.start_year(), rates.values());
  const auto rebuilt = revcast::apply_growth_path(s[0], path);
  CHECK(rebuilt.start_year() == 2011);
  for (std::size_t t = 0; t < rebuilt.size(); ++t) {
    CHECK(rebuilt[t] == doctest::Approx(s[t + 1]).epsilon(1e-12));
  }
}

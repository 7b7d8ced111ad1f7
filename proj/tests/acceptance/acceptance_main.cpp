// Acceptance battery: one binary, one line per criterion. Criteria 1-4 are
// fixture-anchored reproduction checks, 5-9 are seeded Monte-Carlo property
// checks, 10 is conditional on a user-supplied full-history CSV. Exit status
// is the number of failing criteria, so ctest can register each criterion as
// its own test via --criterion N.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "revcast/accuracy.hpp"
#include "revcast/arima.hpp"
#include "revcast/causality.hpp"
#include "revcast/errors.hpp"
#include "revcast/fixtures.hpp"
#include "revcast/linreg.hpp"
#include "revcast/rng.hpp"
#include "revcast/series.hpp"
#include "revcast/stationarity.hpp"

namespace {

using revcast::AnnualSeries;
using revcast::GaussianRng;
using revcast::fixtures::CriterionResult;

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

// Criterion 5: under a pure random-walk null the 5% test should reject about
// 5% of the time, and the embedded response-surface critical values should
// agree with the in-repo Monte-Carlo oracle.
CriterionResult check_adf_size() {
  revcast::AdfSpec spec;  // constant, fixed lag 0 — the tabulated null
  const std::size_t reps = 2000;
  const std::size_t length = 200;
  GaussianRng rng(52001);
  std::vector<double> level(length);
  std::size_t rejections = 0;
  std::size_t n_eff = 0;
  for (std::size_t rep = 0; rep < reps; ++rep) {
    double y = 0.0;
    for (std::size_t t = 0; t < length; ++t) {
      y += rng.normal();
      level[t] = y;
    }
    const auto r = revcast::adf_test(AnnualSeries(1800, level), spec);
    if (r.reject_at.at(5)) ++rejections;
    n_eff = r.n_effective;
  }
  const double freq = static_cast<double>(rejections) / static_cast<double>(reps);

  const auto oracle = revcast::adf_tau_quantiles(revcast::Deterministic::constant,
                                                 length, 20000, 52002);
  double worst_gap = 0.0;
  for (const int lvl : {1, 5, 10}) {
    const double embedded =
        revcast::adf_critical_value(revcast::Deterministic::constant, lvl, n_eff);
    worst_gap = std::max(worst_gap, std::abs(embedded - oracle.at(lvl)));
  }

  const bool size_ok = freq >= 0.025 && freq <= 0.075;
  const bool cv_ok = worst_gap <= 0.05;
  CriterionResult out;
  out.id = 5;
  out.label = "adf size and critical-value oracle";
  out.passed = size_ok && cv_ok;
  out.detail = "5% rejection frequency " + num(freq) +
               " over 2000 random walks (band [0.025, 0.075]); max |embedded cv"
               " - oracle| = " +
               num(worst_gap) + " (tol 0.05)";
  return out;
}

// Criterion 6: parameter recovery on a long simulated ARMA(1,1), plus the
// exact random-walk forecast identity.
CriterionResult check_arima_recovery() {
  const double phi = 0.6;
  const double theta = 0.3;
  const std::size_t n = 2000;
  const std::size_t burn = 200;
  GaussianRng rng(52003);
  std::vector<double> w;
  w.reserve(n);
  double prev_w = 0.0;
  double prev_e = 0.0;
  for (std::size_t t = 0; t < n + burn; ++t) {
    const double e = rng.normal();
    const double cur = phi * prev_w + e + theta * prev_e;
    if (t >= burn) w.push_back(cur);
    prev_w = cur;
    prev_e = e;
  }
  const auto model = revcast::fit_arima(AnnualSeries(1, w), 1, 0, 1);
  const double phi_err = std::abs(model.ar_coeffs.at(0) - phi);
  const double theta_err = std::abs(model.ma_coeffs.at(0) - theta);

  // A driftless ARIMA(0,1,0) predicts the last observation, bit for bit:
  // the differenced forecast is exactly 0 and x + 0.0 == x.
  revcast::ArimaModel rw;
  rw.p = 0;
  rw.d = 1;
  rw.q = 0;
  rw.intercept = 0.0;
  rw.sigma2 = 1.0;
  rw.n_obs = 8;
  const AnnualSeries hist(2000, {3.0, 5.0, 4.0, 7.0, 6.5, 9.25, 8.0, 11.125});
  const auto fc = revcast::forecast(rw, hist, 3);
  const double last = hist[hist.size() - 1];
  const bool exact = fc[0] == last && fc[1] == last && fc[2] == last;

  CriterionResult out;
  out.id = 6;
  out.label = "arima recovery and random-walk forecast identity";
  out.passed = phi_err <= 0.05 && theta_err <= 0.08 && exact;
  out.detail = "|phi_hat - 0.6| = " + num(phi_err) + " (tol 0.05); |theta_hat -"
               " 0.3| = " +
               num(theta_err) + " (tol 0.08); driftless 1..3-step forecast == "
               "last observation: " +
               (exact ? "exact" : "NOT exact");
  return out;
}

// Criterion 7: difference/integrate inverse exactly for d in {1,2} (levels
// with integer values keep every intermediate exactly representable), OLS
// residuals orthogonal to the design, rmse == sqrt(mse) bitwise.
CriterionResult check_roundtrips() {
  GaussianRng rng(52004);
  std::vector<double> vals(40);
  for (auto& v : vals) v = std::floor(rng.uniform() * 100000.0);
  const AnnualSeries s(1980, vals);
  bool roundtrip_ok = true;
  for (const int d : {1, 2}) {
    const auto diffs = revcast::difference(s, d);
    const std::vector<double> anchors(vals.begin(), vals.begin() + d);
    if (!(revcast::integrate(diffs, anchors) == s)) roundtrip_ok = false;
  }

  const std::size_t n_rows = 120;
  std::vector<double> ones(n_rows, 1.0);
  std::vector<double> x1(n_rows), x2(n_rows), x3(n_rows), y(n_rows);
  for (std::size_t i = 0; i < n_rows; ++i) {
    x1[i] = rng.normal();
    x2[i] = rng.normal();
    x3[i] = rng.normal();
    y[i] = 1.5 + 2.0 * x1[i] - x2[i] + 0.5 * x3[i] + 0.1 * rng.normal();
  }
  const auto X = revcast::DesignMatrix::from_columns({"const", "x1", "x2", "x3"},
                                                     {ones, x1, x2, x3});
  const auto fit = revcast::ols_fit(X, y);
  double y_norm = 0.0;
  for (const double v : y) y_norm += v * v;
  y_norm = std::sqrt(y_norm);
  double worst_dot = 0.0;
  for (std::size_t j = 0; j < X.cols(); ++j) {
    double dot = 0.0;
    for (std::size_t i = 0; i < X.rows(); ++i) dot += X(i, j) * fit.residuals[i];
    worst_dot = std::max(worst_dot, std::abs(dot));
  }
  const bool ortho_ok = worst_dot <= 1e-8 * y_norm;

  const AnnualSeries actual(2011, {110.0, 95.0, 130.0, 118.0});
  const AnnualSeries predicted(2011, {104.0, 99.5, 127.0, 121.0});
  const auto rep = revcast::error_stats(actual, predicted);
  const bool rmse_ok = rep.rmse == std::sqrt(rep.mse);

  CriterionResult out;
  out.id = 7;
  out.label = "round-trips and orthogonality";
  out.passed = roundtrip_ok && ortho_ok && rmse_ok;
  out.detail = std::string("difference/integrate d=1,2 ") +
               (roundtrip_ok ? "exact" : "NOT exact") + "; max |X'e| = " +
               num(worst_dot) + " vs bound " + num(1e-8 * y_norm) +
               "; rmse == sqrt(mse): " + (rmse_ok ? "exact" : "NOT exact");
  return out;
}

// Criterion 8: swapping the forecasts flips the statistic exactly, equal
// errors are a guaranteed non-result, and a variance gap this wide should be
// caught nearly always.
CriterionResult check_dm_behaviour() {
  GaussianRng rng(52005);
  std::vector<double> ea(60), eb(60);
  for (std::size_t i = 0; i < ea.size(); ++i) {
    ea[i] = rng.normal();
    eb[i] = 1.3 * rng.normal();
  }
  const auto ab = revcast::dm_test(ea, eb, 1, revcast::Loss::squared);
  const auto ba = revcast::dm_test(eb, ea, 1, revcast::Loss::squared);
  const bool antisym = ab.dm_stat == -ba.dm_stat && ab.p_value == ba.p_value;

  const auto same = revcast::dm_test(ea, ea, 1, revcast::Loss::squared);
  const bool degenerate = same.dm_stat == 0.0 && same.p_value == 1.0;

  const std::size_t draws = 500;
  const std::size_t n = 200;
  std::vector<double> a(n), b(n);
  std::size_t rejections = 0;
  for (std::size_t d = 0; d < draws; ++d) {
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = rng.normal();
      b[i] = 2.0 * rng.normal();
    }
    if (revcast::dm_test(a, b, 1, revcast::Loss::squared).p_value < 0.05) {
      ++rejections;
    }
  }
  const bool power_ok = rejections >= 450;  // >= 90% of 500

  CriterionResult out;
  out.id = 8;
  out.label = "dm antisymmetry, degeneracy, and power";
  out.passed = antisym && degenerate && power_ok;
  out.detail = std::string("antisymmetry ") + (antisym ? "exact" : "BROKEN") +
               "; identical errors -> dm=" + num(same.dm_stat) + ", p=" +
               num(same.p_value) + "; unequal-variance rejections " +
               std::to_string(rejections) + "/500 (need >= 450)";
  return out;
}

// Criterion 9: a strong lag-1 link must be found nearly always, and an
// independent pair must not be flagged much beyond the nominal 5%.
CriterionResult check_granger_discrimination() {
  GaussianRng rng(52006);
  const std::size_t draws = 500;
  const std::size_t n = 300;
  std::vector<double> x(n), y(n);
  std::size_t hits = 0;
  std::size_t false_positives = 0;
  for (std::size_t d = 0; d < draws; ++d) {
    for (std::size_t t = 0; t < n; ++t) x[t] = rng.normal();
    y[0] = rng.normal();
    for (std::size_t t = 1; t < n; ++t) y[t] = 0.9 * x[t - 1] + rng.normal();
    if (revcast::granger_test(AnnualSeries(1, x), AnnualSeries(1, y), 2)
            .causal_at_5pct) {
      ++hits;
    }

    for (std::size_t t = 0; t < n; ++t) {
      x[t] = rng.normal();
      y[t] = rng.normal();
    }
    if (revcast::granger_test(AnnualSeries(1, x), AnnualSeries(1, y), 2)
            .causal_at_5pct) {
      ++false_positives;
    }
  }
  const bool detect_ok = hits >= 475;          // >= 95% of 500
  const bool fp_ok = false_positives <= 40;    // <= 8% of 500

  CriterionResult out;
  out.id = 9;
  out.label = "granger discrimination";
  out.passed = detect_ok && fp_ok;
  out.detail = "causal pair detected " + std::to_string(hits) +
               "/500 (need >= 475); independent pair flagged " +
               std::to_string(false_positives) + "/500 (allow <= 40)";
  return out;
}

template <typename Fn>
CriterionResult guarded(int id, const std::string& label, Fn fn) {
  try {
    return fn();
  } catch (const std::exception& ex) {
    CriterionResult out;
    out.id = id;
    out.label = label;
    out.passed = false;
    out.detail = std::string("aborted: ") + ex.what();
    return out;
  }
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> wanted;
  std::optional<std::string> full_data;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--criterion" && i + 1 < argc) {
      wanted.insert(std::atoi(argv[++i]));
    } else if (arg == "--full-data" && i + 1 < argc) {
      full_data = std::string(argv[++i]);
    } else {
      std::fprintf(stderr,
                   "usage: revcast_acceptance [--criterion N]... "
                   "[--full-data PATH]\n");
      return 2;
    }
  }
  if (!full_data) {
    if (const char* env = std::getenv("REVCAST_FULL_DATA")) {
      if (*env != '\0') full_data = std::string(env);
    }
  }

  const auto selected = [&wanted](int id) {
    return wanted.empty() || wanted.count(id) > 0;
  };

  std::vector<CriterionResult> results;
  const bool with_full = selected(10) && full_data.has_value();
  if (selected(1) || selected(2) || selected(3) || selected(4) || with_full) {
    const auto path = with_full ? full_data : std::optional<std::string>{};
    for (auto& r : revcast::fixtures::run_reproduction_checks(path)) {
      if (selected(r.id)) results.push_back(std::move(r));
    }
  }
  if (selected(5)) {
    results.push_back(guarded(5, "adf size and critical-value oracle",
                              check_adf_size));
  }
  if (selected(6)) {
    results.push_back(guarded(
        6, "arima recovery and random-walk forecast identity",
        check_arima_recovery));
  }
  if (selected(7)) {
    results.push_back(guarded(7, "round-trips and orthogonality",
                              check_roundtrips));
  }
  if (selected(8)) {
    results.push_back(guarded(8, "dm antisymmetry, degeneracy, and power",
                              check_dm_behaviour));
  }
  if (selected(9)) {
    results.push_back(guarded(9, "granger discrimination",
                              check_granger_discrimination));
  }
  std::sort(results.begin(), results.end(),
            [](const CriterionResult& a, const CriterionResult& b) {
              return a.id < b.id;
            });

  std::size_t passed = 0;
  for (const auto& r : results) {
    std::printf("criterion %2d  %s  %s\n", r.id, r.passed ? "PASS" : "FAIL",
                r.label.c_str());
    if (!r.detail.empty()) std::printf("              %s\n", r.detail.c_str());
    if (r.passed) ++passed;
  }
  if (wanted.count(10) > 0 && !full_data) {
    std::printf(
        "criterion 10 skipped: supply --full-data PATH (or set "
        "REVCAST_FULL_DATA) to run the conditional baseline check\n");
  }
  std::printf("%zu of %zu criteria passed.\n", passed, results.size());
  return static_cast<int>(results.size() - passed);
}

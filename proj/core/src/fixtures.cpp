#include "revcast/fixtures.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <utility>

#include "revcast/accuracy.hpp"
#include "revcast/arima.hpp"
#include "revcast/errors.hpp"

namespace revcast::fixtures {

namespace detail {
// Defined in the generated fixture_data.cpp.
extern const char* const table3c_csv_text;
extern const char* const table4_csv_text;
extern const char* const table5_csv_text;
extern const char* const table6_csv_text;
}  // namespace detail

namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.8g", v);
  return buf;
}

bool within_pct(double value, double expected, double fraction) {
  return std::abs(value - expected) <= fraction * std::abs(expected);
}

AnnualSeries window(const AnnualSeries& s, int from, int to) {
  std::vector<double> v;
  v.reserve(static_cast<std::size_t>(to - from + 1));
  for (int year = from; year <= to; ++year) v.push_back(s.at_year(year));
  return AnnualSeries(from, std::move(v), s.unit());
}

AnnualSeries combine(const AnnualSeries& actual, const AnnualSeries& residual,
                     ResidualSign sign) {
  std::vector<double> v(actual.size());
  const double flip =
      sign == ResidualSign::actual_minus_predicted ? -1.0 : 1.0;
  for (std::size_t i = 0; i < actual.size(); ++i) {
    v[i] = actual[i] + flip * residual[i];
  }
  return AnnualSeries(actual.start_year(), std::move(v));
}

std::vector<Table5Entry> parse_table5(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);  // header: panel,metric,model,value,provenance
  std::vector<Table5Entry> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    Table5Entry e;
    std::string value_text, provenance;
    std::getline(row, e.panel, ',');
    std::getline(row, e.metric, ',');
    std::getline(row, e.model, ',');
    std::getline(row, value_text, ',');
    std::getline(row, provenance, ',');
    e.value = std::stod(value_text);
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace

Dataset table3c() {
  static const Dataset d =
      parse_series_csv(detail::table3c_csv_text, "fixture:table3c");
  return d;
}

Dataset table4() {
  static const Dataset d =
      parse_series_csv(detail::table4_csv_text, "fixture:table4");
  return d;
}

Dataset table6() {
  static const Dataset d =
      parse_series_csv(detail::table6_csv_text, "fixture:table6");
  return d;
}

const std::vector<Table5Entry>& table5() {
  static const std::vector<Table5Entry> entries =
      parse_table5(detail::table5_csv_text);
  return entries;
}

double table5_value(const std::string& panel, const std::string& metric,
                    const std::string& model) {
  for (const Table5Entry& e : table5()) {
    if (e.panel == panel && e.metric == metric && e.model == model) {
      return e.value;
    }
  }
  throw Error(ErrorCode::invalid_argument,
              "no accuracy-table cell (" + panel + ", " + metric + ", " +
                  model + ")");
}

AnnualSeries pit_actual() { return window(table6().at("PIT"), 2010, 2019); }

AnnualSeries vat_actual() { return window(table6().at("VAT"), 2010, 2019); }

AnnualSeries pit_predicted(ResidualSign sign) {
  return combine(pit_actual(), table6().at("PIT_RESIDUAL"), sign);
}

AnnualSeries vat_predicted(ResidualSign sign) {
  return combine(vat_actual(), table6().at("VAT_RESIDUAL"), sign);
}

ScenarioSpec pit_scenario() {
  const Dataset rates = table4();
  ScenarioSpec spec;
  spec.target_name = "PIT";
  spec.target_history = pit_actual();
  for (const std::string name : {"SOC", "WAGE", "PEN"}) {
    const AnnualSeries& growth = rates.at(name + std::string("_GROWTH"));
    // Index level: 100 at 2010, compounded through 2019.
    std::vector<double> index{100.0};
    std::vector<double> path;
    for (int year = 2011; year <= 2022; ++year) {
      const double rate = growth.at_year(year) / 100.0;
      if (year <= 2019) {
        index.push_back(index.back() * (1.0 + rate));
      } else {
        path.push_back(rate);
      }
    }
    spec.drivers.emplace_back(name, AnnualSeries(2010, std::move(index)));
    spec.driver_paths.emplace(name, GrowthPath(2020, std::move(path)));
  }
  spec.base_year = 2019;
  spec.horizon = 3;
  spec.intercept = true;
  return spec;
}

namespace {

CriterionResult check_accuracy_moments() {
  CriterionResult r{1, "in-sample accuracy moments (PIT MSE/RMSE, VAT RMSE)",
                    false, ""};
  const AccuracyReport pit = error_stats(pit_actual(), pit_predicted());
  const AccuracyReport vat = error_stats(vat_actual(), vat_predicted());
  const double pit_mse = table5_value("PIT", "mse", "regression");
  const double pit_rmse = table5_value("PIT", "rmse", "regression");
  const double vat_rmse = table5_value("VAT", "rmse", "regression");
  const bool ok_pit_mse = within_pct(pit.mse, pit_mse, 0.10);
  const bool ok_pit_rmse = within_pct(pit.rmse, pit_rmse, 0.10);
  const bool ok_vat_rmse = within_pct(vat.rmse, vat_rmse, 0.10);
  r.passed = ok_pit_mse && ok_pit_rmse && ok_vat_rmse;
  r.detail = "PIT mse " + num(pit.mse) + " vs " + num(pit_mse) +
             (ok_pit_mse ? " ok" : " OUT") + "; PIT rmse " + num(pit.rmse) +
             " vs " + num(pit_rmse) + (ok_pit_rmse ? " ok" : " OUT") +
             "; VAT rmse " + num(vat.rmse) + " vs " + num(vat_rmse) +
             (ok_vat_rmse ? " ok" : " OUT") + " (band 10%)";
  return r;
}

CriterionResult check_model_ranking() {
  CriterionResult r{2, "published error magnitudes rank regression first",
                    false, ""};
  bool all_ok = true;
  std::string detail;
  for (const std::string panel : {"PIT", "VAT"}) {
    const AnnualSeries actual = panel == "PIT" ? pit_actual() : vat_actual();
    std::map<std::string, AnnualSeries> predictions;
    for (const std::string model : {"regression", "arima111", "official"}) {
      const double me = table5_value(panel, "me", model);
      const double mse = table5_value(panel, "mse", model);
      // Error series with exactly the published first two moments:
      // e_t = me + s*z_t with z alternating +-1 over an even length.
      const double s = std::sqrt(mse - me * me);
      std::vector<double> pred(actual.size());
      for (std::size_t i = 0; i < actual.size(); ++i) {
        const double z = i % 2 == 0 ? 1.0 : -1.0;
        pred[i] = actual[i] - (me + s * z);
      }
      predictions.emplace(model,
                          AnnualSeries(actual.start_year(), std::move(pred)));
    }
    const ModelComparison cmp = compare_models(actual, predictions);
    const bool ok = cmp.ranked.front().name == "regression";
    all_ok = all_ok && ok;
    if (!detail.empty()) detail += "; ";
    detail += panel;
    detail += " order";
    for (const auto& entry : cmp.ranked) {
      detail += " " + entry.name + "(" + num(entry.report.rmse) + ")";
    }
    detail += ok ? " ok" : " OUT";
  }
  r.passed = all_ok;
  r.detail = detail;
  return r;
}

CriterionResult check_scenario_projection() {
  CriterionResult r{3, "scenario projection 2020-2022 and cumulative growth",
                    false, ""};
  const ScenarioSpec spec = pit_scenario();
  const RegressionFit fit = fit_scenario(spec);
  std::map<std::string, GrangerResult> screen;
  std::string screen_note;
  try {
    screen = screen_drivers(spec, 1);
  } catch (const Error& e) {
    screen_note = std::string("; screen skipped (") + e.code_name() + ")";
  }
  const ScenarioForecast f = project(spec, fit, screen);
  const GrowthSummary growth = summarize_growth(f);
  const AnnualSeries published = window(table6().at("PIT"), 2020, 2022);
  bool all_ok = true;
  std::string detail;
  for (int year = 2020; year <= 2022; ++year) {
    const double got = f.projected_levels.at_year(year);
    const double want = published.at_year(year);
    const bool ok = within_pct(got, want, 0.05);
    all_ok = all_ok && ok;
    detail += std::to_string(year) + " " + num(got) + " vs " + num(want) +
              (ok ? " ok; " : " OUT; ");
  }
  const bool ok_growth = std::abs(growth.cumulative - 0.51) <= 0.05;
  all_ok = all_ok && ok_growth;
  detail += "cumulative " + num(growth.cumulative) + " vs 0.51+-0.05" +
            (ok_growth ? " ok" : " OUT") + screen_note;
  r.passed = all_ok;
  r.detail = detail;
  return r;
}

CriterionResult check_growth_arithmetic() {
  CriterionResult r{4, "pension growth path compounds to x1.3722", false, ""};
  const AnnualSeries pen = table4().at("PEN_GROWTH");
  const GrowthPath path(2020, {pen.at_year(2020) / 100.0,
                               pen.at_year(2021) / 100.0,
                               pen.at_year(2022) / 100.0});
  const AnnualSeries levels = apply_growth_path(1.0, path);
  const double factor = levels[levels.size() - 1];
  r.passed = std::abs(factor - 1.3722) <= 1e-4;
  r.detail = "factor " + num(factor) + " vs 1.3722 (tol 1e-4)" +
             (r.passed ? " ok" : " OUT");
  return r;
}

CriterionResult check_full_data_baseline(const std::string& path) {
  CriterionResult r{10, "ARIMA(1,1,1) baseline on the official series", false,
                    ""};
  const Dataset data = load_csv(path);
  bool all_ok = true;
  std::string detail;
  const struct {
    const char* name;
    double level_2020;   // millions of EUR
    double mean_growth;  // fraction
  } targets[] = {{"PIT", 1920.0, 0.0787}, {"VAT", 5780.0, 0.0668}};
  for (const auto& t : targets) {
    const AnnualSeries& s = data.at(t.name);
    const ArimaModel model = fit_arima(s, 1, 1, 1);
    const AnnualSeries fc = forecast(model, s, 3);
    const double level = fc.at_year(2020);
    double previous = s.at_year(2019);
    double growth_sum = 0.0;
    for (int year = 2020; year <= 2022; ++year) {
      growth_sum += fc.at_year(year) / previous - 1.0;
      previous = fc.at_year(year);
    }
    const double mean_growth = growth_sum / 3.0;
    const bool ok_level = within_pct(level, t.level_2020, 0.05);
    const bool ok_growth = std::abs(mean_growth - t.mean_growth) <= 0.01;
    all_ok = all_ok && ok_level && ok_growth;
    if (!detail.empty()) detail += "; ";
    detail += std::string(t.name) + " 2020 " + num(level) + " vs " +
              num(t.level_2020) + (ok_level ? " ok" : " OUT") +
              ", mean growth " + num(mean_growth) + " vs " +
              num(t.mean_growth) + "+-0.01" + (ok_growth ? " ok" : " OUT");
  }
  r.passed = all_ok;
  r.detail = detail;
  return r;
}

CriterionResult guarded(CriterionResult (*check)()) {
  try {
    return check();
  } catch (const Error& e) {
    return CriterionResult{0, "criterion aborted", false,
                           std::string("error: ") + e.code_name() + ": " +
                               e.what()};
  }
}

}  // namespace

std::vector<CriterionResult> run_reproduction_checks(
    const std::optional<std::string>& full_data_path) {
  std::vector<CriterionResult> results;
  const std::pair<int, CriterionResult (*)()> fixture_checks[] = {
      {1, &check_accuracy_moments},
      {2, &check_model_ranking},
      {3, &check_scenario_projection},
      {4, &check_growth_arithmetic},
  };
  for (const auto& [id, check] : fixture_checks) {
    CriterionResult r = guarded(check);
    r.id = id;
    results.push_back(std::move(r));
  }
  if (full_data_path) {
    CriterionResult r;
    try {
      r = check_full_data_baseline(*full_data_path);
    } catch (const Error& e) {
      r.passed = false;
      r.detail =
          std::string("error: ") + e.code_name() + ": " + e.what();
      r.label = "ARIMA(1,1,1) baseline on the official series";
    }
    r.id = 10;
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace revcast::fixtures

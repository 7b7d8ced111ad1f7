#include "revcast/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "revcast/accuracy.hpp"
#include "revcast/arima.hpp"
#include "revcast/causality.hpp"
#include "revcast/errors.hpp"
#include "revcast/fixtures.hpp"
#include "revcast/stationarity.hpp"

namespace revcast {

namespace {

using nlohmann::json;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::missing_file, "cannot open '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Deterministic to_det(const std::string& name) {
  if (name == "none") return Deterministic::none;
  if (name == "trend") return Deterministic::constant_and_trend;
  return Deterministic::constant;
}

json series_json(const AnnualSeries& s) {
  return json{{"start_year", s.start_year()}, {"values", s.values()}};
}

json report_json(const AccuracyReport& r) {
  return json{{"me", r.me},     {"mse", r.mse},     {"rmse", r.rmse},
              {"mae", r.mae},   {"mpe", r.mpe},     {"mape", r.mape},
              {"smape", r.smape}, {"theil_u1", r.theil_u1}, {"n", r.n}};
}

json model_json(const ArimaModel& m) {
  return json{{"p", m.p},
              {"d", m.d},
              {"q", m.q},
              {"ar", m.ar_coeffs},
              {"ma", m.ma_coeffs},
              {"intercept", m.intercept},
              {"sigma2", m.sigma2},
              {"log_css", m.log_css},
              {"aic", m.aic()},
              {"n_obs", m.n_obs}};
}

struct PlotRow {
  std::string series;
  int year = 0;
  double value = 0.0;
  std::string kind;  // actual | fitted | forecast
};

void append_plot_rows(std::vector<PlotRow>& rows, const std::string& name,
                      const AnnualSeries& s, const std::string& kind) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    rows.push_back(
        {name, s.start_year() + static_cast<int>(i), s[i], kind});
  }
}

void write_plot_csv(const std::string& path, const std::vector<PlotRow>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorCode::missing_file,
                "cannot open '" + path + "' for writing");
  }
  out << "series,year,value,kind\n";
  char buf[64];
  for (const PlotRow& r : rows) {
    std::snprintf(buf, sizeof(buf), "%.12g", r.value);
    out << r.series << ',' << r.year << ',' << buf << ',' << r.kind << '\n';
  }
}

struct Common {
  bool json_out = false;
  std::uint64_t seed = 42;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_flag("--json", c.json_out, "emit a deterministic JSON report");
  cmd->add_option("--seed", c.seed,
                  "master seed for any Monte-Carlo step (echoed in reports)");
}

int emit(std::ostream& out, const Common& c, const std::string& command,
         const std::map<std::string, std::string>& digests,
         const std::vector<std::string>& warnings, const json& payload,
         const std::string& human) {
  if (c.json_out) {
    RunReport report;
    report.command = command;
    report.seed = c.seed;
    report.input_digests = digests;
    report.warnings = warnings;
    report.payload_json = payload.dump();
    out << render_report(report);
  } else {
    for (const std::string& w : warnings) out << "warning: " << w << "\n";
    out << human;
  }
  return 0;
}

int parse_int_field(const std::string& value, std::size_t line_no,
                    const char* key) {
  int parsed = 0;
  const auto [ptr, ec] =
      std::from_chars(value.data(), value.data() + value.size(), parsed);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    throw Error(ErrorCode::configuration,
                "scenario line " + std::to_string(line_no) + ": " + key +
                    " must be an integer, got '" + value + "'");
  }
  return parsed;
}

std::vector<double> parse_fractions(const std::string& value,
                                    std::size_t line_no) {
  std::vector<double> out;
  std::istringstream in(value);
  std::string field;
  while (std::getline(in, field, ',')) {
    const std::string t = trim(field);
    double parsed = 0.0;
    const auto [ptr, ec] =
        std::from_chars(t.data(), t.data() + t.size(), parsed);
    if (ec != std::errc{} || ptr != t.data() + t.size()) {
      throw Error(ErrorCode::configuration,
                  "scenario line " + std::to_string(line_no) +
                      ": '" + field + "' is not a number");
    }
    out.push_back(parsed);
  }
  if (out.empty()) {
    throw Error(ErrorCode::configuration,
                "scenario line " + std::to_string(line_no) +
                    ": empty growth path");
  }
  return out;
}

// ---------------------------------------------------------------- adf

struct AdfOpts {
  Common c;
  std::string data, series;
  std::string det = "constant";
  int lag = -1;      // >=0: fixed lag
  int max_lag = -1;  // >=0: cap for AIC selection
};

int cmd_adf(const AdfOpts& o, std::ostream& out) {
  const std::map<std::string, std::string> digests{
      {o.data, file_digest(o.data)}};
  const Dataset data = load_csv(o.data);
  const AnnualSeries& s = data.at(o.series);
  AdfSpec spec;
  if (o.lag >= 0) {
    spec.deterministic = to_det(o.det);
    spec.max_lag = o.lag;
    spec.lag_selection = LagSelection::fixed;
  } else {
    spec = AdfSpec::defaults(s.size());
    spec.deterministic = to_det(o.det);
    if (o.max_lag >= 0) spec.max_lag = o.max_lag;
  }
  const AdfResult r = adf_test(s, spec);

  json payload{{"series", o.series},
               {"deterministic", o.det},
               {"tau", r.tau_stat},
               {"chosen_lag", r.chosen_lag},
               {"n_effective", r.n_effective}};
  for (const auto& [level, cv] : r.critical_values) {
    payload["critical_values"][std::to_string(level) + "%"] = cv;
  }
  for (const auto& [level, reject] : r.reject_at) {
    payload["reject_at"][std::to_string(level) + "%"] = reject;
  }

  std::ostringstream h;
  h << "ADF test: " << o.series << "  (det=" << o.det
    << ", lag=" << r.chosen_lag << ", n_eff=" << r.n_effective << ")\n";
  h << "  tau = " << fmt(r.tau_stat) << "\n";
  h << "  level  critical  reject\n";
  for (const auto& [level, cv] : r.critical_values) {
    h << "  " << std::left << std::setw(5) << (std::to_string(level) + "%")
      << std::right << std::setw(9) << fmt(cv) << "  "
      << (r.reject_at.at(level) ? "yes" : "no") << "\n";
  }
  return emit(out, o.c, "adf", digests, {}, payload, h.str());
}

// ---------------------------------------------------------------- acf

struct AcfOpts {
  Common c;
  std::string data, series;
  int max_lag = -1;
  bool with_pacf = false;
};

int cmd_acf(const AcfOpts& o, std::ostream& out) {
  const std::map<std::string, std::string> digests{
      {o.data, file_digest(o.data)}};
  const Dataset data = load_csv(o.data);
  const AnnualSeries& s = data.at(o.series);
  const int max_lag =
      o.max_lag >= 0 ? o.max_lag
                     : std::min<int>(10, static_cast<int>(s.size()) - 1);
  const std::vector<CorrelogramPoint> a = acf(s, max_lag);
  std::vector<CorrelogramPoint> p;
  if (o.with_pacf) p = pacf(s, max_lag);

  json payload{{"series", o.series},
               {"max_lag", max_lag},
               {"conf_band", a.front().conf_band}};
  payload["acf"] = json::array();
  for (const CorrelogramPoint& pt : a) {
    payload["acf"].push_back({{"lag", pt.lag}, {"value", pt.value}});
  }
  if (o.with_pacf) {
    payload["pacf"] = json::array();
    for (const CorrelogramPoint& pt : p) {
      payload["pacf"].push_back({{"lag", pt.lag}, {"value", pt.value}});
    }
  }

  std::ostringstream h;
  h << "Correlogram: " << o.series << "  (n=" << s.size() << ", band +-"
    << fmt(a.front().conf_band) << ")\n";
  h << "  lag  acf";
  if (o.with_pacf) h << "        pacf";
  h << "\n";
  for (std::size_t i = 0; i < a.size(); ++i) {
    h << "  " << std::left << std::setw(4) << a[i].lag << std::right << " "
      << std::setw(9) << fmt(a[i].value);
    if (o.with_pacf) h << "  " << std::setw(9) << fmt(p[i].value);
    h << "\n";
  }
  return emit(out, o.c, "acf", digests, {}, payload, h.str());
}

// ---------------------------------------------------------------- fit-arima

struct FitOpts {
  Common c;
  std::string data, series;
  int p = -1, d = 0, q = -1;
  bool select = false;
  int max_p = 3, max_q = 3;
  int jobs = 1;
};

int cmd_fit_arima(const FitOpts& o, std::ostream& out) {
  const std::map<std::string, std::string> digests{
      {o.data, file_digest(o.data)}};
  const Dataset data = load_csv(o.data);
  const AnnualSeries& s = data.at(o.series);
  int p = o.p, q = o.q;
  if (o.select) {
    const auto [sp, sq] = select_order(s, o.max_p, o.d, o.max_q, o.jobs);
    p = sp;
    q = sq;
  } else if (p < 0 || q < 0) {
    throw Error(ErrorCode::usage, "provide -p and -q, or use --select");
  }
  const ArimaModel m = fit_arima(s, p, o.d, q);

  json payload = model_json(m);
  payload["series"] = o.series;
  payload["selected"] = o.select;
  if (o.select) {
    payload["grid"] = json{{"p_max", o.max_p}, {"q_max", o.max_q}};
  }

  std::ostringstream h;
  h << "ARIMA(" << m.p << "," << m.d << "," << m.q << ") fit: " << o.series
    << "  (n=" << m.n_obs << ")\n";
  if (o.select) {
    h << "  selected over p<=" << o.max_p << ", q<=" << o.max_q
      << " by common-window AIC\n";
  }
  for (std::size_t i = 0; i < m.ar_coeffs.size(); ++i) {
    h << "  ar" << i + 1 << "        " << fmt(m.ar_coeffs[i]) << "\n";
  }
  for (std::size_t i = 0; i < m.ma_coeffs.size(); ++i) {
    h << "  ma" << i + 1 << "        " << fmt(m.ma_coeffs[i]) << "\n";
  }
  h << "  intercept  " << fmt(m.intercept) << "\n";
  h << "  sigma2     " << fmt(m.sigma2) << "\n";
  h << "  aic        " << fmt(m.aic()) << "\n";
  return emit(out, o.c, "fit-arima", digests, {}, payload, h.str());
}

// ---------------------------------------------------------------- forecast

struct ForecastOpts {
  Common c;
  std::string data, series;
  int p = 0, d = 0, q = 0;
  int horizon = 3;
  std::string emit_plot;
};

int cmd_forecast(const ForecastOpts& o, std::ostream& out) {
  const std::map<std::string, std::string> digests{
      {o.data, file_digest(o.data)}};
  const Dataset data = load_csv(o.data);
  const AnnualSeries& s = data.at(o.series);
  const ArimaModel m = fit_arima(s, o.p, o.d, o.q);
  const AnnualSeries fc = forecast(m, s, o.horizon);

  if (!o.emit_plot.empty()) {
    std::vector<PlotRow> rows;
    append_plot_rows(rows, o.series, s, "actual");
    append_plot_rows(rows, o.series, fc, "forecast");
    write_plot_csv(o.emit_plot, rows);
  }

  json payload{{"series", o.series},
               {"model", model_json(m)},
               {"horizon", o.horizon},
               {"forecast", series_json(fc)}};

  std::ostringstream h;
  h << "ARIMA(" << m.p << "," << m.d << "," << m.q
    << ") forecast: " << o.series << "\n";
  for (std::size_t i = 0; i < fc.size(); ++i) {
    h << "  " << fc.start_year() + static_cast<int>(i) << "  " << fmt(fc[i])
      << "\n";
  }
  return emit(out, o.c, "forecast", digests, {}, payload, h.str());
}

// ---------------------------------------------------------------- granger

struct GrangerOpts {
  Common c;
  std::string data, cause, effect;
  int max_lag = 1;
  int diff = 0;
};

int cmd_granger(const GrangerOpts& o, std::ostream& out) {
  const std::map<std::string, std::string> digests{
      {o.data, file_digest(o.data)}};
  const Dataset data = load_csv(o.data);
  const AnnualSeries x = difference(data.at(o.cause), o.diff);
  const AnnualSeries y = difference(data.at(o.effect), o.diff);
  const GrangerResult g = granger_test(x, y, o.max_lag, o.cause, o.effect);

  const json payload{{"cause", g.cause},
                     {"effect", g.effect},
                     {"max_lag", g.max_lag},
                     {"diff", o.diff},
                     {"f_stat", g.f_test.f_stat},
                     {"df_num", g.f_test.df_num},
                     {"df_den", g.f_test.df_den},
                     {"p_value", g.f_test.p_value},
                     {"causal_at_5pct", g.causal_at_5pct}};

  std::ostringstream h;
  h << "Granger test: does " << g.cause << " help predict " << g.effect
    << "?  (max_lag=" << g.max_lag << ", diff=" << o.diff << ")\n";
  h << "  F(" << g.f_test.df_num << ", " << g.f_test.df_den
    << ") = " << fmt(g.f_test.f_stat) << "   p = " << fmt(g.f_test.p_value)
    << "\n";
  h << "  causal at 5%: " << (g.causal_at_5pct ? "yes" : "no") << "\n";
  return emit(out, o.c, "granger", digests, {}, payload, h.str());
}

// ---------------------------------------------------------------- evaluate

struct EvaluateOpts {
  Common c;
  std::string data, actual;
  std::vector<std::string> preds;
};

int cmd_evaluate(const EvaluateOpts& o, std::ostream& out) {
  const std::map<std::string, std::string> digests{
      {o.data, file_digest(o.data)}};
  const Dataset data = load_csv(o.data);
  const AnnualSeries& actual = data.at(o.actual);

  if (o.preds.size() == 1) {
    const AccuracyReport r = error_stats(actual, data.at(o.preds.front()));
    json payload = report_json(r);
    payload["actual"] = o.actual;
    payload["predicted"] = o.preds.front();

    std::ostringstream h;
    h << "Accuracy: " << o.preds.front() << " vs " << o.actual
      << "  (n=" << r.n << ")\n";
    h << "  me        " << fmt(r.me) << "\n";
    h << "  mse       " << fmt(r.mse) << "\n";
    h << "  rmse      " << fmt(r.rmse) << "\n";
    h << "  mae       " << fmt(r.mae) << "\n";
    h << "  mpe       " << fmt(r.mpe) << "\n";
    h << "  mape      " << fmt(r.mape) << "\n";
    h << "  smape     " << fmt(r.smape) << "\n";
    h << "  theil_u1  " << fmt(r.theil_u1) << "\n";
    return emit(out, o.c, "evaluate", digests, {}, payload, h.str());
  }

  std::map<std::string, AnnualSeries> predictions;
  for (const std::string& name : o.preds) {
    predictions.emplace(name, data.at(name));
  }
  const ModelComparison cmp = compare_models(actual, predictions);

  json payload{{"actual", o.actual}};
  payload["ranked"] = json::array();
  for (const auto& entry : cmp.ranked) {
    json e = report_json(entry.report);
    e["model"] = entry.name;
    payload["ranked"].push_back(e);
  }
  payload["dm_tests"] = json::array();
  for (const auto& pw : cmp.dm_tests) {
    payload["dm_tests"].push_back({{"model_a", pw.model_a},
                                   {"model_b", pw.model_b},
                                   {"dm_stat", pw.dm.dm_stat},
                                   {"p_value", pw.dm.p_value},
                                   {"horizon", pw.dm.horizon}});
  }

  std::ostringstream h;
  h << "Model comparison vs " << o.actual << ", ranked by rmse:\n";
  h << "  rank  model                 rmse       mae        mape       theil_u1\n";
  int rank = 1;
  for (const auto& entry : cmp.ranked) {
    h << "  " << std::left << std::setw(4) << rank++ << "  " << std::setw(20)
      << entry.name << std::right << " " << std::setw(9)
      << fmt(entry.report.rmse) << "  " << std::setw(9)
      << fmt(entry.report.mae) << "  " << std::setw(9)
      << fmt(entry.report.mape) << "  " << std::setw(9)
      << fmt(entry.report.theil_u1) << "\n";
  }
  h << "DM tests (squared loss, h=1):\n";
  for (const auto& pw : cmp.dm_tests) {
    h << "  " << pw.model_a << " vs " << pw.model_b
      << ": dm=" << fmt(pw.dm.dm_stat) << "  p=" << fmt(pw.dm.p_value)
      << "\n";
  }
  return emit(out, o.c, "evaluate", digests, {}, payload, h.str());
}

// ---------------------------------------------------------------- scenario

struct ScenarioOpts {
  Common c;
  std::string data, spec_file;
  int screen_lag = 1;
  bool no_screen = false;
  std::string emit_plot;
};

int cmd_scenario(const ScenarioOpts& o, std::ostream& out) {
  std::map<std::string, std::string> digests{{o.data, file_digest(o.data)}};
  digests.emplace(o.spec_file, file_digest(o.spec_file));
  const Dataset data = load_csv(o.data);
  const ScenarioSpec spec =
      parse_scenario_file(read_text_file(o.spec_file), data);
  const RegressionFit fit = fit_scenario(spec);

  std::vector<std::string> warnings;
  std::map<std::string, GrangerResult> screen;
  if (!o.no_screen) {
    try {
      screen = screen_drivers(spec, o.screen_lag);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::insufficient_data) throw;
      warnings.push_back(std::string("granger screen skipped: ") + e.what());
    }
  }
  const ScenarioForecast f = project(spec, fit, screen);
  const GrowthSummary growth = summarize_growth(f);

  if (!o.emit_plot.empty()) {
    std::vector<PlotRow> rows;
    const AnnualSeries& predicted = f.in_sample_predicted;
    std::vector<double> actual_window;
    for (int year = predicted.start_year(); year <= f.base_year; ++year) {
      actual_window.push_back(spec.target_history.at_year(year));
    }
    append_plot_rows(
        rows, spec.target_name,
        AnnualSeries(predicted.start_year(), std::move(actual_window)),
        "actual");
    append_plot_rows(rows, spec.target_name, predicted, "fitted");
    append_plot_rows(rows, spec.target_name, f.projected_levels, "forecast");
    write_plot_csv(o.emit_plot, rows);
  }

  json payload{{"target", spec.target_name},
               {"base_year", f.base_year},
               {"horizon", spec.horizon}};
  payload["fit"] = json{{"columns", fit.column_names},
                        {"beta", fit.beta},
                        {"se_beta", fit.se_beta},
                        {"r_squared", fit.r_squared},
                        {"sigma2", fit.sigma2},
                        {"n_obs", fit.n_obs}};
  payload["screen"] = json::object();
  json flagged = json::array();
  for (const auto& [name, g] : f.granger_screen) {
    payload["screen"][name] = json{{"f_stat", g.f_test.f_stat},
                                   {"p_value", g.f_test.p_value},
                                   {"causal_at_5pct", g.causal_at_5pct}};
    if (!g.causal_at_5pct) flagged.push_back(name);
  }
  payload["flagged"] = flagged;
  payload["in_sample"] =
      json{{"predicted", series_json(f.in_sample_predicted)},
           {"residuals", series_json(f.residuals)}};
  payload["projection"] = series_json(f.projected_levels);
  json yearly = json::array();
  for (const auto& [year, rate] : growth.yearly) {
    yearly.push_back({{"year", year}, {"rate", rate}});
  }
  payload["growth"] = json{{"base_year", growth.base_year},
                           {"base_level", growth.base_level},
                           {"yearly", yearly},
                           {"cumulative", growth.cumulative}};

  std::ostringstream h;
  h << "Scenario: " << spec.target_name << "  base " << f.base_year
    << "  horizon " << spec.horizon << "  (fit window n=" << fit.n_obs
    << ")\n";
  h << "Fit: R^2=" << fmt(fit.r_squared) << "  sigma2=" << fmt(fit.sigma2)
    << "\n";
  for (std::size_t j = 0; j < fit.column_names.size(); ++j) {
    h << "  " << std::left << std::setw(10) << fit.column_names[j]
      << std::right << " beta=" << std::setw(10) << fmt(fit.beta[j])
      << "  se=" << std::setw(10) << fmt(fit.se_beta[j]) << "\n";
  }
  if (!f.granger_screen.empty()) {
    h << "Granger screen (lag " << o.screen_lag << ", first differences):\n";
    for (const auto& [name, g] : f.granger_screen) {
      h << "  " << std::left << std::setw(10) << name << std::right << " F("
        << g.f_test.df_num << ", " << g.f_test.df_den
        << ")=" << fmt(g.f_test.f_stat) << "  p=" << fmt(g.f_test.p_value)
        << "  causal at 5%: " << (g.causal_at_5pct ? "yes" : "no") << "\n";
    }
  }
  h << "Projection:\n";
  for (const auto& [year, rate] : growth.yearly) {
    h << "  " << year << "  " << std::setw(10)
      << fmt(f.projected_levels.at_year(year)) << "  ("
      << (rate >= 0 ? "+" : "") << fmt(rate * 100.0) << "%)\n";
  }
  h << "Cumulative vs " << growth.base_year << ": "
    << (growth.cumulative >= 0 ? "+" : "") << fmt(growth.cumulative * 100.0)
    << "%\n";
  return emit(out, o.c, "scenario", digests, warnings, payload, h.str());
}

// ---------------------------------------------------------------- reproduce

struct ReproduceOpts {
  Common c;
  std::string full_data;
};

int cmd_reproduce(const ReproduceOpts& o, std::ostream& out) {
  std::map<std::string, std::string> digests;
  std::optional<std::string> full_data;
  if (!o.full_data.empty()) {
    digests.emplace(o.full_data, file_digest(o.full_data));
    full_data = o.full_data;
  }
  const std::vector<fixtures::CriterionResult> results =
      fixtures::run_reproduction_checks(full_data);

  json payload;
  payload["criteria"] = json::array();
  std::size_t passed = 0;
  for (const fixtures::CriterionResult& r : results) {
    payload["criteria"].push_back({{"id", r.id},
                                   {"label", r.label},
                                   {"passed", r.passed},
                                   {"detail", r.detail}});
    if (r.passed) ++passed;
  }
  payload["passed"] = passed;
  payload["total"] = results.size();

  std::ostringstream h;
  for (const fixtures::CriterionResult& r : results) {
    h << "criterion " << std::setw(2) << r.id << "  "
      << (r.passed ? "PASS" : "FAIL") << "  " << r.label << "\n";
    h << "              " << r.detail << "\n";
  }
  h << passed << " of " << results.size() << " criteria passed.\n";
  return emit(out, o.c, "reproduce-paper", digests, {}, payload, h.str());
}

}  // namespace

std::string render_report(const RunReport& report) {
  json doc;
  doc["command"] = report.command;
  doc["inputs"] = json::object();
  for (const auto& [path, digest] : report.input_digests) {
    doc["inputs"][path] = digest;
  }
  doc["result"] = report.payload_json.empty()
                      ? json::object()
                      : json::parse(report.payload_json);
  doc["seed"] = report.seed;
  doc["warnings"] = report.warnings;
  return doc.dump(2) + "\n";
}

std::string file_digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::missing_file, "cannot open '" + path + "'");
  }
  std::uint64_t hash = 14695981039346656037ull;  // FNV-1a offset basis
  char c = 0;
  while (in.get(c)) {
    hash ^= static_cast<unsigned char>(c);
    hash *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(hash));
  return buf;
}

ScenarioSpec parse_scenario_file(const std::string& text,
                                 const Dataset& data) {
  std::istringstream in(text);
  std::string line;
  std::optional<std::string> target;
  std::optional<int> base_year, horizon;
  bool intercept = true;
  std::vector<std::string> order;
  std::map<std::string, std::string> histories;
  std::map<std::string, std::vector<double>> paths;
  std::size_t line_no = 0;

  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::configuration,
                  "scenario line " + std::to_string(line_no) +
                      ": expected key=value");
    }
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (value.empty()) {
      throw Error(ErrorCode::configuration,
                  "scenario line " + std::to_string(line_no) +
                      ": key '" + key + "' has no value");
    }
    if (key == "target") {
      target = value;
    } else if (key == "base_year") {
      base_year = parse_int_field(value, line_no, "base_year");
    } else if (key == "horizon") {
      horizon = parse_int_field(value, line_no, "horizon");
    } else if (key == "intercept") {
      if (value == "true") {
        intercept = true;
      } else if (value == "false") {
        intercept = false;
      } else {
        throw Error(ErrorCode::configuration,
                    "scenario line " + std::to_string(line_no) +
                        ": intercept must be true or false");
      }
    } else if (key.rfind("driver.", 0) == 0) {
      const std::string rest = key.substr(7);
      const auto dot = rest.rfind('.');
      if (dot == std::string::npos || dot == 0) {
        throw Error(ErrorCode::configuration,
                    "scenario line " + std::to_string(line_no) +
                        ": unknown key '" + key + "'");
      }
      const std::string name = rest.substr(0, dot);
      const std::string field = rest.substr(dot + 1);
      if (std::find(order.begin(), order.end(), name) == order.end()) {
        order.push_back(name);
      }
      if (field == "history") {
        histories[name] = value;
      } else if (field == "path") {
        paths[name] = parse_fractions(value, line_no);
      } else {
        throw Error(ErrorCode::configuration,
                    "scenario line " + std::to_string(line_no) +
                        ": unknown driver field '" + field + "'");
      }
    } else {
      throw Error(ErrorCode::configuration,
                  "scenario line " + std::to_string(line_no) +
                      ": unknown key '" + key + "'");
    }
  }

  if (!target) {
    throw Error(ErrorCode::configuration, "scenario file sets no target=");
  }
  if (!base_year) {
    throw Error(ErrorCode::configuration, "scenario file sets no base_year=");
  }
  if (!horizon) {
    throw Error(ErrorCode::configuration, "scenario file sets no horizon=");
  }
  if (order.empty()) {
    throw Error(ErrorCode::configuration, "scenario file declares no drivers");
  }

  ScenarioSpec spec;
  spec.target_name = *target;
  spec.target_history = data.at(*target);
  spec.base_year = *base_year;
  spec.horizon = *horizon;
  spec.intercept = intercept;
  for (const std::string& name : order) {
    const auto h = histories.find(name);
    if (h == histories.end()) {
      throw Error(ErrorCode::configuration,
                  "driver '" + name + "' has a path but no history column");
    }
    spec.drivers.emplace_back(name, data.at(h->second));
    const auto p = paths.find(name);
    if (p != paths.end()) {
      spec.driver_paths.emplace(name, GrowthPath(*base_year + 1, p->second));
    }
  }
  return spec;
}

int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err) {
  CLI::App app{"annual tax-revenue forecasting toolkit"};
  app.require_subcommand(1);

  AdfOpts adf_o;
  CLI::App* adf_cmd =
      app.add_subcommand("adf", "augmented Dickey-Fuller unit-root test");
  adf_cmd->add_option("--data", adf_o.data, "SERIES CSV file")->required();
  adf_cmd->add_option("--series", adf_o.series, "column to test")->required();
  adf_cmd->add_option("--det", adf_o.det, "deterministic terms")
      ->check(CLI::IsMember({"none", "constant", "trend"}));
  adf_cmd->add_option("--lag", adf_o.lag, "fixed lag order");
  adf_cmd->add_option("--max-lag", adf_o.max_lag,
                      "cap for AIC lag selection (default: rule of thumb)");
  add_common(adf_cmd, adf_o.c);

  AcfOpts acf_o;
  CLI::App* acf_cmd =
      app.add_subcommand("acf", "sample autocorrelation function");
  acf_cmd->add_option("--data", acf_o.data, "SERIES CSV file")->required();
  acf_cmd->add_option("--series", acf_o.series, "column to analyse")
      ->required();
  acf_cmd->add_option("--max-lag", acf_o.max_lag,
                      "highest lag (default min(10, n-1))");
  acf_cmd->add_flag("--pacf", acf_o.with_pacf,
                    "also print partial autocorrelations");
  add_common(acf_cmd, acf_o.c);

  FitOpts fit_o;
  CLI::App* fit_cmd =
      app.add_subcommand("fit-arima", "estimate an ARIMA(p,d,q) model");
  fit_cmd->add_option("--data", fit_o.data, "SERIES CSV file")->required();
  fit_cmd->add_option("--series", fit_o.series, "column to model")
      ->required();
  CLI::Option* p_opt = fit_cmd->add_option("-p,--ar", fit_o.p, "AR order");
  fit_cmd->add_option("-d,--diff", fit_o.d, "differencing order");
  CLI::Option* q_opt = fit_cmd->add_option("-q,--ma", fit_o.q, "MA order");
  CLI::Option* sel =
      fit_cmd->add_flag("--select", fit_o.select,
                        "pick (p,q) by AIC over a grid instead");
  sel->excludes(p_opt);
  sel->excludes(q_opt);
  fit_cmd->add_option("--max-p", fit_o.max_p, "grid cap for p");
  fit_cmd->add_option("--max-q", fit_o.max_q, "grid cap for q");
  fit_cmd->add_option("--jobs", fit_o.jobs,
                      "threads for the selection grid (same result)");
  add_common(fit_cmd, fit_o.c);

  ForecastOpts fc_o;
  CLI::App* fc_cmd =
      app.add_subcommand("forecast", "fit an ARIMA model and extrapolate");
  fc_cmd->add_option("--data", fc_o.data, "SERIES CSV file")->required();
  fc_cmd->add_option("--series", fc_o.series, "column to forecast")
      ->required();
  fc_cmd->add_option("-p,--ar", fc_o.p, "AR order");
  fc_cmd->add_option("-d,--diff", fc_o.d, "differencing order");
  fc_cmd->add_option("-q,--ma", fc_o.q, "MA order");
  fc_cmd->add_option("--horizon", fc_o.horizon, "years ahead")
      ->check(CLI::PositiveNumber);
  fc_cmd->add_option("--emit-plot", fc_o.emit_plot,
                     "write tidy plot CSV (series,year,value,kind)");
  add_common(fc_cmd, fc_o.c);

  GrangerOpts gr_o;
  CLI::App* gr_cmd =
      app.add_subcommand("granger", "Granger-causality F-test");
  gr_cmd->add_option("--data", gr_o.data, "SERIES CSV file")->required();
  gr_cmd->add_option("--cause", gr_o.cause, "candidate cause column")
      ->required();
  gr_cmd->add_option("--effect", gr_o.effect, "effect column")->required();
  gr_cmd->add_option("--max-lag", gr_o.max_lag, "lag depth")
      ->check(CLI::PositiveNumber);
  gr_cmd->add_option("--diff", gr_o.diff,
                     "difference both series this many times first")
      ->check(CLI::NonNegativeNumber);
  add_common(gr_cmd, gr_o.c);

  EvaluateOpts ev_o;
  CLI::App* ev_cmd = app.add_subcommand(
      "evaluate", "forecast-accuracy battery and model ranking");
  ev_cmd->add_option("--data", ev_o.data, "SERIES CSV file")->required();
  ev_cmd->add_option("--actual", ev_o.actual, "outturn column")->required();
  ev_cmd->add_option("--pred", ev_o.preds,
                     "prediction column (repeat to compare models)")
      ->required();
  add_common(ev_cmd, ev_o.c);

  ScenarioOpts sc_o;
  CLI::App* sc_cmd = app.add_subcommand(
      "scenario", "screen drivers, fit, and project a scenario");
  sc_cmd->add_option("--data", sc_o.data, "SERIES CSV file")->required();
  sc_cmd->add_option("--spec", sc_o.spec_file, "scenario key=value file")
      ->required();
  sc_cmd->add_option("--screen-lag", sc_o.screen_lag,
                     "Granger screen lag depth")
      ->check(CLI::PositiveNumber);
  sc_cmd->add_flag("--no-screen", sc_o.no_screen,
                   "skip the Granger screen");
  sc_cmd->add_option("--emit-plot", sc_o.emit_plot,
                     "write tidy plot CSV (series,year,value,kind)");
  add_common(sc_cmd, sc_o.c);

  ReproduceOpts rp_o;
  CLI::App* rp_cmd = app.add_subcommand(
      "reproduce-paper",
      "check the embedded benchmark fixtures against their published values");
  rp_cmd->add_option("--full-data", rp_o.full_data,
                     "full-history SERIES CSV (PIT, VAT in millions of EUR) "
                     "for the conditional baseline check");
  add_common(rp_cmd, rp_o.c);

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("revcast");
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    const std::vector<CLI::App*> parsed = app.get_subcommands();
    out << (parsed.empty() ? app.help() : parsed.front()->help());
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: usage\n" << e.what() << "\n";
    return 2;
  }

  try {
    if (adf_cmd->parsed()) return cmd_adf(adf_o, out);
    if (acf_cmd->parsed()) return cmd_acf(acf_o, out);
    if (fit_cmd->parsed()) return cmd_fit_arima(fit_o, out);
    if (fc_cmd->parsed()) return cmd_forecast(fc_o, out);
    if (gr_cmd->parsed()) return cmd_granger(gr_o, out);
    if (ev_cmd->parsed()) return cmd_evaluate(ev_o, out);
    if (sc_cmd->parsed()) return cmd_scenario(sc_o, out);
    if (rp_cmd->parsed()) return cmd_reproduce(rp_o, out);
  } catch (const Error& e) {
    err << "error: " << e.code_name() << "\n" << e.what() << "\n";
    return e.code() == ErrorCode::usage ? 2 : 1;
  } catch (const std::exception& e) {
    err << "error: internal\n" << e.what() << "\n";
    return 1;
  }
  err << "error: usage\nno subcommand given\n";
  return 2;
}

}  // namespace revcast

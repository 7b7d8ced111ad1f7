#include "revcast/arima.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <future>
#include <limits>
#include <optional>
#include <string>

#include "revcast/errors.hpp"
#include "revcast/optim.hpp"

namespace revcast {

namespace {

double sample_mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

// Roots of 1 - c1 z - ... - cp z^p by Durand-Kerner. Trailing near-zero
// coefficients are trimmed (their roots sit at infinity). Empty result for
// an all-zero coefficient vector.
std::optional<std::vector<std::complex<double>>> polynomial_roots(
    const std::vector<double>& coeffs) {
  std::vector<std::complex<double>> poly;  // a0 + a1 z + ...
  poly.emplace_back(1.0, 0.0);
  for (double c : coeffs) poly.emplace_back(-c, 0.0);
  while (poly.size() > 1 && std::abs(poly.back()) < 1e-14) poly.pop_back();
  const std::size_t degree = poly.size() - 1;
  std::vector<std::complex<double>> roots;
  if (degree == 0) return roots;
  for (auto& a : poly) a /= poly.back();  // monic

  roots.resize(degree);
  const std::complex<double> spread(0.4, 0.9);
  std::complex<double> seed(1.0, 0.0);
  for (auto& r : roots) {
    seed *= spread;
    r = seed;
  }
  auto eval = [&](std::complex<double> z) {
    std::complex<double> v = poly.back();
    for (std::size_t i = poly.size() - 1; i-- > 0;) v = v * z + poly[i];
    return v;
  };
  for (int iter = 0; iter < 200; ++iter) {
    double max_step = 0.0;
    for (std::size_t i = 0; i < degree; ++i) {
      std::complex<double> denom(1.0, 0.0);
      for (std::size_t j = 0; j < degree; ++j) {
        if (j != i) denom *= roots[i] - roots[j];
      }
      if (std::abs(denom) < 1e-300) return std::nullopt;
      const std::complex<double> step = eval(roots[i]) / denom;
      roots[i] -= step;
      max_step = std::max(max_step, std::abs(step));
    }
    if (max_step < 1e-12) return roots;
  }
  return std::nullopt;  // stalled (e.g. tight root clusters)
}

// Map AR-form coefficients into the stationary region: roots on or inside
// the unit circle are reflected to 1/conj(root) (on-circle roots get pushed
// slightly outside first). nullopt when root finding fails.
std::optional<std::vector<double>> reflect_into_stationary(
    const std::vector<double>& coeffs) {
  bool all_zero = true;
  for (double c : coeffs) all_zero = all_zero && c == 0.0;
  if (coeffs.empty() || all_zero) return coeffs;

  auto maybe_roots = polynomial_roots(coeffs);
  if (!maybe_roots) return std::nullopt;
  auto& roots = *maybe_roots;
  bool changed = false;
  for (auto& r : roots) {
    const double mod = std::abs(r);
    if (mod < 1e-8) return std::nullopt;  // reflection would explode
    if (mod <= 1.0 - 1e-9) {
      r = std::complex<double>(1.0, 0.0) / std::conj(r);
      changed = true;
    } else if (mod < 1.0 + 1e-9) {
      r *= (1.0 + 1e-6) / mod;  // sitting on the circle: nudge outside
      changed = true;
    }
  }
  // Degree may have dropped (trimmed zero tail): rebuild to full length.
  std::vector<std::complex<double>> poly;
  poly.emplace_back(1.0, 0.0);
  for (const auto& r : roots) {
    // multiply by (1 - z / r)
    std::vector<std::complex<double>> next(poly.size() + 1,
                                           std::complex<double>(0.0, 0.0));
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i] += poly[i];
      next[i + 1] -= poly[i] / r;
    }
    poly = std::move(next);
  }
  std::vector<double> out(coeffs.size(), 0.0);
  for (std::size_t i = 1; i < poly.size(); ++i) out[i - 1] = -poly[i].real();
  if (!changed) return coeffs;  // keep caller's exact values when admissible
  return out;
}

// MA polynomial 1 + theta1 z + ... is the AR form with negated signs.
std::optional<std::vector<double>> reflect_into_invertible(
    const std::vector<double>& theta) {
  std::vector<double> negated(theta.size());
  for (std::size_t i = 0; i < theta.size(); ++i) negated[i] = -theta[i];
  auto reflected = reflect_into_stationary(negated);
  if (!reflected) return std::nullopt;
  for (double& c : *reflected) c = -c;
  return reflected;
}

double css_value(const std::vector<double>& w, double mu,
                 const std::vector<double>& phi,
                 const std::vector<double>& theta) {
  const std::size_t p = phi.size();
  const std::size_t q = theta.size();
  const std::size_t m = w.size();
  std::vector<double> eps(m, 0.0);
  double css = 0.0;
  for (std::size_t t = p; t < m; ++t) {
    double e = w[t] - mu;
    for (std::size_t i = 0; i < p; ++i) e -= phi[i] * (w[t - 1 - i] - mu);
    for (std::size_t j = 0; j < q; ++j) {
      if (t >= j + 1) e -= theta[j] * eps[t - 1 - j];
    }
    eps[t] = e;
    css += e * e;
  }
  return css;
}

struct FitCandidate {
  double css = std::numeric_limits<double>::infinity();
  std::vector<double> mu_phi_theta;
  bool converged = false;
};

}  // namespace

std::vector<CorrelogramPoint> acf(const AnnualSeries& s, int max_lag) {
  if (max_lag < 0) {
    throw Error(ErrorCode::invalid_argument, "max_lag must be non-negative");
  }
  const std::size_t n = s.size();
  if (static_cast<std::size_t>(max_lag) >= n) {
    throw Error(ErrorCode::insufficient_data,
                "lag " + std::to_string(max_lag) + " needs more than " +
                    std::to_string(n) + " observations");
  }
  const auto& x = s.values();
  const double mean = sample_mean(x);
  double denom = 0.0;
  for (double v : x) denom += (v - mean) * (v - mean);
  if (denom == 0.0) {
    throw Error(ErrorCode::degenerate_series,
                "constant series has no autocorrelation structure");
  }
  const double band = 1.96 / std::sqrt(static_cast<double>(n));
  std::vector<CorrelogramPoint> points;
  points.reserve(static_cast<std::size_t>(max_lag) + 1);
  for (int k = 0; k <= max_lag; ++k) {
    // Uncentered cross products first, mean terms folded in afterwards:
    // sum (x_t - m)(x_{t+k} - m) = sum x_t x_{t+k} - m (head + tail sums)
    //                              + (n-k) m^2.
    double cross = 0.0, head = 0.0, tail = 0.0;
    const std::size_t kk = static_cast<std::size_t>(k);
    for (std::size_t t = 0; t + kk < n; ++t) {
      cross += x[t] * x[t + kk];
      head += x[t];
      tail += x[t + kk];
    }
    const double numer =
        cross - mean * (head + tail) + static_cast<double>(n - kk) * mean * mean;
    points.push_back({k, k == 0 ? 1.0 : numer / denom, band});
  }
  return points;
}

std::vector<CorrelogramPoint> pacf(const AnnualSeries& s, int max_lag) {
  const std::vector<CorrelogramPoint> rho = acf(s, max_lag);
  const double band = 1.96 / std::sqrt(static_cast<double>(s.size()));
  std::vector<CorrelogramPoint> points;
  points.reserve(rho.size());
  points.push_back({0, 1.0, band});
  if (max_lag == 0) return points;

  // Durbin-Levinson: phi[k][k] is the lag-k partial autocorrelation.
  std::vector<double> phi_prev(static_cast<std::size_t>(max_lag) + 1, 0.0);
  std::vector<double> phi_cur(phi_prev);
  double v = 1.0;  // normalized innovation variance
  for (int k = 1; k <= max_lag; ++k) {
    double num = rho[static_cast<std::size_t>(k)].value;
    for (int j = 1; j < k; ++j) {
      num -= phi_prev[static_cast<std::size_t>(j)] *
             rho[static_cast<std::size_t>(k - j)].value;
    }
    if (v < 1e-14) {
      points.push_back({k, 0.0, band});  // process already fully explained
      continue;
    }
    const double phi_kk = num / v;
    phi_cur[static_cast<std::size_t>(k)] = phi_kk;
    for (int j = 1; j < k; ++j) {
      phi_cur[static_cast<std::size_t>(j)] =
          phi_prev[static_cast<std::size_t>(j)] -
          phi_kk * phi_prev[static_cast<std::size_t>(k - j)];
    }
    v *= 1.0 - phi_kk * phi_kk;
    phi_prev = phi_cur;
    points.push_back({k, phi_kk, band});
  }
  return points;
}

double ArimaModel::aic() const {
  const std::size_t m = n_obs - static_cast<std::size_t>(d);
  const double terms = static_cast<double>(m - static_cast<std::size_t>(p));
  const double k_params = static_cast<double>(p + q + 2);
  return terms * (log_css - std::log(terms)) + 2.0 * k_params;
}

std::vector<double> arma_innovations(const ArimaModel& m,
                                     const std::vector<double>& w) {
  const std::size_t p = m.ar_coeffs.size();
  const std::size_t q = m.ma_coeffs.size();
  std::vector<double> eps(w.size(), 0.0);
  for (std::size_t t = p; t < w.size(); ++t) {
    double e = w[t] - m.intercept;
    for (std::size_t i = 0; i < p; ++i) {
      e -= m.ar_coeffs[i] * (w[t - 1 - i] - m.intercept);
    }
    for (std::size_t j = 0; j < q; ++j) {
      if (t >= j + 1) e -= m.ma_coeffs[j] * eps[t - 1 - j];
    }
    eps[t] = e;
  }
  return eps;
}

bool roots_outside_unit_circle(const std::vector<double>& coeffs) {
  auto roots = polynomial_roots(coeffs);
  if (!roots) return false;
  for (const auto& r : *roots) {
    if (std::abs(r) <= 1.0) return false;
  }
  return true;
}

ArimaModel fit_arima(const AnnualSeries& s, int p, int d, int q) {
  if (p < 0 || d < 0 || q < 0) {
    throw Error(ErrorCode::invalid_argument,
                "model orders must be non-negative");
  }
  if (s.size() < static_cast<std::size_t>(p + q + d + 10)) {
    throw Error(ErrorCode::insufficient_data,
                "order (" + std::to_string(p) + "," + std::to_string(d) + "," +
                    std::to_string(q) + ") needs at least " +
                    std::to_string(p + q + d + 10) + " observations, got " +
                    std::to_string(s.size()));
  }
  const std::vector<double> w =
      d == 0 ? s.values() : difference(s, d).values();
  const std::size_t m = w.size();

  ArimaModel model;
  model.p = p;
  model.d = d;
  model.q = q;
  model.n_obs = s.size();

  if (p == 0 && q == 0) {
    // Closed form: the differenced process is just mean + noise.
    const double mu = sample_mean(w);
    double css = 0.0;
    for (double v : w) css += (v - mu) * (v - mu);
    model.intercept = mu;
    model.sigma2 = css / static_cast<double>(m);
    model.log_css = std::log(css);
    return model;
  }

  const double w_mean = sample_mean(w);
  {
    double var = 0.0;
    for (double v : w) var += (v - w_mean) * (v - w_mean);
    if (var == 0.0) {
      throw Error(ErrorCode::degenerate_series,
                  "differenced series is constant; ARMA structure is "
                  "unidentifiable");
    }
  }

  const std::size_t dim = 1 + static_cast<std::size_t>(p + q);
  auto split = [&](const std::vector<double>& x) {
    std::vector<double> phi(x.begin() + 1, x.begin() + 1 + p);
    std::vector<double> theta(x.begin() + 1 + p, x.end());
    return std::make_pair(phi, theta);
  };
  auto objective = [&](const std::vector<double>& x) {
    auto [phi, theta] = split(x);
    const auto phi_ok = reflect_into_stationary(phi);
    const auto theta_ok = reflect_into_invertible(theta);
    if (!phi_ok || !theta_ok) {
      return std::numeric_limits<double>::infinity();
    }
    return css_value(w, x[0], *phi_ok, *theta_ok);
  };

  // Multi-start: flat coefficients at 0 plus four +-0.3 perturbation
  // patterns; the mean always starts at the sample mean.
  std::vector<std::vector<double>> starts;
  for (int pattern = 0; pattern < 5; ++pattern) {
    std::vector<double> x(dim, 0.0);
    x[0] = w_mean;
    for (std::size_t c = 1; c < dim; ++c) {
      switch (pattern) {
        case 0: break;
        case 1: x[c] = 0.3; break;
        case 2: x[c] = -0.3; break;
        case 3: x[c] = c <= static_cast<std::size_t>(p) ? 0.3 : -0.3; break;
        case 4: x[c] = c <= static_cast<std::size_t>(p) ? -0.3 : 0.3; break;
      }
    }
    starts.push_back(std::move(x));
  }

  SimplexOptions options;
  options.initial_step = 0.1;
  options.diameter_tol = 1e-8;
  options.max_evaluations = 5000;
  FitCandidate best;
  bool any_converged = false;
  for (const auto& start : starts) {
    const SimplexResult run = nelder_mead(objective, start, options);
    any_converged = any_converged || run.converged;
    if (run.value < best.css) {
      best.css = run.value;
      best.mu_phi_theta = run.x;
      best.converged = run.converged;
    }
  }
  if (best.mu_phi_theta.empty() || !std::isfinite(best.css)) {
    throw Error(ErrorCode::non_convergence,
                "every start point produced an inadmissible model");
  }
  auto [phi_raw, theta_raw] = split(best.mu_phi_theta);
  const auto phi = reflect_into_stationary(phi_raw);
  const auto theta = reflect_into_invertible(theta_raw);
  if (!phi || !theta) {
    throw Error(ErrorCode::non_convergence,
                "optimum could not be mapped into the admissible region");
  }
  if (!any_converged) {
    std::string at = "mu=" + std::to_string(best.mu_phi_theta[0]);
    for (double c : *phi) at += " phi=" + std::to_string(c);
    for (double c : *theta) at += " theta=" + std::to_string(c);
    throw Error(ErrorCode::non_convergence,
                "simplex exhausted its evaluation budget; best point: " + at +
                    " css=" + std::to_string(best.css));
  }

  model.intercept = best.mu_phi_theta[0];
  model.ar_coeffs = *phi;
  model.ma_coeffs = *theta;
  const double css = css_value(w, model.intercept, *phi, *theta);
  const std::size_t terms = m - static_cast<std::size_t>(p);
  model.sigma2 = css / static_cast<double>(terms);
  model.log_css = std::log(css);
  return model;
}

AnnualSeries forecast(const ArimaModel& m, const AnnualSeries& last_obs,
                      int horizon) {
  if (horizon < 1) {
    throw Error(ErrorCode::invalid_argument, "horizon must be at least 1");
  }
  const std::size_t needed =
      static_cast<std::size_t>(std::max(m.p, m.q) + m.d);
  if (last_obs.size() < needed) {
    throw Error(ErrorCode::insufficient_context,
                "forecast needs at least " + std::to_string(needed) +
                    " trailing observations, got " +
                    std::to_string(last_obs.size()));
  }
  // Hand-rolled differencing: with exactly max(p,q)+d observations the
  // differenced history may legitimately be empty (pure random walk).
  std::vector<double> w = last_obs.values();
  for (int pass = 0; pass < m.d; ++pass) {
    for (std::size_t t = 0; t + 1 < w.size(); ++t) w[t] = w[t + 1] - w[t];
    w.pop_back();
  }
  std::vector<double> eps = arma_innovations(m, w);

  std::vector<double> extended = w;
  extended.reserve(w.size() + static_cast<std::size_t>(horizon));
  eps.reserve(eps.size() + static_cast<std::size_t>(horizon));
  for (int h = 0; h < horizon; ++h) {
    const std::size_t t = extended.size();
    double z = m.intercept;
    for (int i = 0; i < m.p; ++i) {
      z += m.ar_coeffs[static_cast<std::size_t>(i)] *
           (extended[t - 1 - static_cast<std::size_t>(i)] - m.intercept);
    }
    for (int j = 0; j < m.q; ++j) {
      const std::size_t back = static_cast<std::size_t>(j) + 1;
      if (t >= back) {
        z += m.ma_coeffs[static_cast<std::size_t>(j)] * eps[t - back];
      }
    }
    extended.push_back(z);
    eps.push_back(0.0);  // future innovations are their expectation
  }

  std::vector<double> anchors(
      last_obs.values().begin(),
      last_obs.values().begin() + static_cast<long>(m.d));
  const AnnualSeries rebuilt =
      integrate(extended, last_obs.start_year() + m.d, anchors,
                last_obs.unit());
  std::vector<double> future(rebuilt.values().end() - horizon,
                             rebuilt.values().end());
  return AnnualSeries(last_obs.end_year() + 1, std::move(future),
                      last_obs.unit());
}

std::pair<int, int> select_order(const AnnualSeries& s, int p_max, int d,
                                 int q_max, int jobs) {
  if (p_max < 0 || q_max < 0) {
    throw Error(ErrorCode::invalid_argument,
                "order bounds must be non-negative");
  }
  if (jobs < 1) {
    throw Error(ErrorCode::invalid_argument, "jobs must be at least 1");
  }
  struct Candidate {
    int p, q;
  };
  std::vector<Candidate> grid;
  for (int p = 0; p <= p_max; ++p) {
    for (int q = 0; q <= q_max; ++q) grid.push_back({p, q});
  }
  // Parsimony order: by p+q, then q, then p. Combined with strictly-better
  // replacement below this implements the tie-break.
  std::sort(grid.begin(), grid.end(), [](const Candidate& a, const Candidate& b) {
    const int sa = a.p + a.q, sb = b.p + b.q;
    if (sa != sb) return sa < sb;
    if (a.q != b.q) return a.q < b.q;
    return a.p < b.p;
  });

  const std::vector<double> w =
      d == 0 ? s.values() : difference(s, d).values();
  const std::size_t m = w.size();
  const std::size_t common_terms = m - static_cast<std::size_t>(p_max);

  // AIC on a common estimation window: every candidate's innovations are
  // summed from t = p_max on, so penalties are the only difference in kind.
  auto common_aic = [&](const ArimaModel& model) {
    const std::vector<double> eps = arma_innovations(model, w);
    double css = 0.0;
    for (std::size_t t = static_cast<std::size_t>(p_max); t < m; ++t) {
      css += eps[t] * eps[t];
    }
    const double terms = static_cast<double>(common_terms);
    const double k_params = static_cast<double>(model.p + model.q + 2);
    if (css <= 0.0) return -std::numeric_limits<double>::infinity();
    return terms * std::log(css / terms) + 2.0 * k_params;
  };

  auto fit_cell = [&](const Candidate& c) -> std::optional<double> {
    try {
      return common_aic(fit_arima(s, c.p, d, c.q));
    } catch (const Error&) {
      return std::nullopt;
    }
  };

  std::vector<std::optional<double>> aics(grid.size());
  if (jobs == 1) {
    for (std::size_t i = 0; i < grid.size(); ++i) aics[i] = fit_cell(grid[i]);
  } else {
    std::vector<std::future<std::optional<double>>> slots(grid.size());
    std::size_t next = 0;
    while (next < grid.size()) {
      const std::size_t batch =
          std::min<std::size_t>(static_cast<std::size_t>(jobs),
                                grid.size() - next);
      for (std::size_t b = 0; b < batch; ++b) {
        const Candidate c = grid[next + b];
        slots[next + b] =
            std::async(std::launch::async, [c, &fit_cell] { return fit_cell(c); });
      }
      for (std::size_t b = 0; b < batch; ++b) {
        aics[next + b] = slots[next + b].get();
      }
      next += batch;
    }
  }

  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!aics[i]) continue;
    if (!best || *aics[i] < *aics[*best]) best = i;
  }
  if (!best) {
    throw Error(ErrorCode::selection_failure,
                "no (p,q) candidate produced an admissible fit");
  }
  return {grid[*best].p, grid[*best].q};
}

}  // namespace revcast

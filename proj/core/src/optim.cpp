#include "revcast/optim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "revcast/errors.hpp"

namespace revcast {

namespace {

double simplex_diameter(const std::vector<std::vector<double>>& pts) {
  double diam = 0.0;
  for (std::size_t a = 0; a < pts.size(); ++a) {
    for (std::size_t b = a + 1; b < pts.size(); ++b) {
      double d2 = 0.0;
      for (std::size_t i = 0; i < pts[a].size(); ++i) {
        const double d = pts[a][i] - pts[b][i];
        d2 += d * d;
      }
      diam = std::max(diam, std::sqrt(d2));
    }
  }
  return diam;
}

}  // namespace

SimplexResult nelder_mead(
    const std::function<double(const std::vector<double>&)>& objective,
    const std::vector<double>& start, const SimplexOptions& options) {
  if (start.empty()) {
    throw Error(ErrorCode::invalid_argument,
                "simplex search needs at least one dimension");
  }
  const std::size_t dim = start.size();
  constexpr double alpha = 1.0;  // reflection
  constexpr double gamma = 2.0;  // expansion
  constexpr double rho = 0.5;    // contraction
  constexpr double sigma = 0.5;  // shrink

  SimplexResult result;
  std::vector<std::vector<double>> pts(dim + 1, start);
  for (std::size_t i = 0; i < dim; ++i) {
    pts[i + 1][i] += options.initial_step;
  }
  std::vector<double> vals(dim + 1);
  auto eval = [&](const std::vector<double>& x) {
    ++result.evaluations;
    const double v = objective(x);
    return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
  };
  for (std::size_t i = 0; i <= dim; ++i) vals[i] = eval(pts[i]);

  std::vector<std::size_t> order(dim + 1);
  while (result.evaluations < options.max_evaluations) {
    for (std::size_t i = 0; i <= dim; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    if (simplex_diameter(pts) < options.diameter_tol) {
      result.converged = true;
      break;
    }
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second_worst = order[dim - 1];

    std::vector<double> centroid(dim, 0.0);
    for (std::size_t i = 0; i <= dim; ++i) {
      if (i == worst) continue;
      for (std::size_t c = 0; c < dim; ++c) centroid[c] += pts[i][c];
    }
    for (double& c : centroid) c /= static_cast<double>(dim);

    std::vector<double> reflected(dim);
    for (std::size_t c = 0; c < dim; ++c) {
      reflected[c] = centroid[c] + alpha * (centroid[c] - pts[worst][c]);
    }
    const double f_reflected = eval(reflected);

    if (f_reflected < vals[best]) {
      std::vector<double> expanded(dim);
      for (std::size_t c = 0; c < dim; ++c) {
        expanded[c] = centroid[c] + gamma * (reflected[c] - centroid[c]);
      }
      const double f_expanded = eval(expanded);
      if (f_expanded < f_reflected) {
        pts[worst] = std::move(expanded);
        vals[worst] = f_expanded;
      } else {
        pts[worst] = std::move(reflected);
        vals[worst] = f_reflected;
      }
      continue;
    }
    if (f_reflected < vals[second_worst]) {
      pts[worst] = std::move(reflected);
      vals[worst] = f_reflected;
      continue;
    }
    std::vector<double> contracted(dim);
    if (f_reflected < vals[worst]) {
      for (std::size_t c = 0; c < dim; ++c) {
        contracted[c] = centroid[c] + rho * (reflected[c] - centroid[c]);
      }
      const double f_contracted = eval(contracted);
      if (f_contracted <= f_reflected) {
        pts[worst] = std::move(contracted);
        vals[worst] = f_contracted;
        continue;
      }
    } else {
      for (std::size_t c = 0; c < dim; ++c) {
        contracted[c] = centroid[c] + rho * (pts[worst][c] - centroid[c]);
      }
      const double f_contracted = eval(contracted);
      if (f_contracted < vals[worst]) {
        pts[worst] = std::move(contracted);
        vals[worst] = f_contracted;
        continue;
      }
    }
    for (std::size_t i = 0; i <= dim; ++i) {  // shrink toward the best point
      if (i == best) continue;
      for (std::size_t c = 0; c < dim; ++c) {
        pts[i][c] = pts[best][c] + sigma * (pts[i][c] - pts[best][c]);
      }
      vals[i] = eval(pts[i]);
    }
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i <= dim; ++i) {
    if (vals[i] < vals[best]) best = i;
  }
  result.x = pts[best];
  result.value = vals[best];
  return result;
}

}  // namespace revcast

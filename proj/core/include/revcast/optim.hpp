#pragma once

#include <functional>
#include <vector>

namespace revcast {

struct SimplexOptions {
  double initial_step = 0.1;    // simplex edge length around the start point
  double diameter_tol = 1e-8;   // stop when the simplex shrinks below this
  int max_evaluations = 5000;
};

struct SimplexResult {
  std::vector<double> x;
  double value = 0.0;
  int evaluations = 0;
  bool converged = false;
};

/// Derivative-free Nelder-Mead simplex minimization (reflection, expansion,
/// contraction, shrink). The objective may return +infinity to veto a point.
SimplexResult nelder_mead(
    const std::function<double(const std::vector<double>&)>& objective,
    const std::vector<double>& start, const SimplexOptions& options = {});

}  // namespace revcast

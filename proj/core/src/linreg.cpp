#include "revcast/linreg.hpp"

#include <cmath>
#include <limits>

#include "revcast/errors.hpp"
#include "revcast/special.hpp"

namespace revcast {

namespace {

constexpr double kRankTolerance = 1e-10;  // relative to the largest QR pivot
constexpr double kFStatCap = 1e15;        // reported when SSR_u == 0

}  // namespace

DesignMatrix::DesignMatrix(std::vector<std::string> column_names,
                           const std::vector<std::vector<double>>& rows) {
  names_ = std::move(column_names);
  rows_ = rows.size();
  cols_ = names_.size();
  data_.reserve(rows_ * cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    if (rows[i].size() != cols_) {
      throw Error(ErrorCode::arity_mismatch,
                  "design row " + std::to_string(i) + " has " +
                      std::to_string(rows[i].size()) + " entries, expected " +
                      std::to_string(cols_));
    }
    data_.insert(data_.end(), rows[i].begin(), rows[i].end());
  }
  validate();
}

DesignMatrix DesignMatrix::from_columns(
    std::vector<std::string> column_names,
    const std::vector<std::vector<double>>& columns) {
  DesignMatrix X;
  X.names_ = std::move(column_names);
  X.cols_ = X.names_.size();
  if (columns.size() != X.cols_) {
    throw Error(ErrorCode::arity_mismatch,
                "got " + std::to_string(columns.size()) + " columns for " +
                    std::to_string(X.cols_) + " column names");
  }
  X.rows_ = X.cols_ == 0 ? 0 : columns.front().size();
  for (std::size_t j = 0; j < X.cols_; ++j) {
    if (columns[j].size() != X.rows_) {
      throw Error(ErrorCode::arity_mismatch,
                  "column '" + X.names_[j] + "' has " +
                      std::to_string(columns[j].size()) +
                      " entries, expected " + std::to_string(X.rows_));
    }
  }
  X.data_.resize(X.rows_ * X.cols_);
  for (std::size_t i = 0; i < X.rows_; ++i) {
    for (std::size_t j = 0; j < X.cols_; ++j) {
      X.data_[i * X.cols_ + j] = columns[j][i];
    }
  }
  X.validate();
  return X;
}

void DesignMatrix::validate() const {
  if (cols_ == 0) {
    throw Error(ErrorCode::invalid_argument, "design matrix has no columns");
  }
  if (rows_ == 0) {
    throw Error(ErrorCode::insufficient_data, "design matrix has no rows");
  }
  for (double v : data_) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::invalid_argument,
                  "non-finite entry in design matrix");
    }
  }
  for (std::size_t a = 0; a < cols_; ++a) {
    for (std::size_t b = a + 1; b < cols_; ++b) {
      bool identical = true;
      for (std::size_t i = 0; i < rows_ && identical; ++i) {
        identical = (*this)(i, a) == (*this)(i, b);
      }
      if (identical) {
        throw Error(ErrorCode::singular_design,
                    "column '" + names_[b] + "' exactly duplicates column '" +
                        names_[a] + "'");
      }
    }
  }
}

bool DesignMatrix::has_intercept_column() const {
  for (std::size_t j = 0; j < cols_; ++j) {
    const double first = (*this)(0, j);
    if (first == 0.0) continue;
    bool constant = true;
    for (std::size_t i = 1; i < rows_ && constant; ++i) {
      constant = (*this)(i, j) == first;
    }
    if (constant) return true;
  }
  return false;
}

RegressionFit ols_fit(const DesignMatrix& X, const std::vector<double>& y) {
  const std::size_t n = X.rows();
  const std::size_t k = X.cols();
  if (y.size() != n) {
    throw Error(ErrorCode::arity_mismatch,
                "response has " + std::to_string(y.size()) +
                    " values for a " + std::to_string(n) + "-row design");
  }
  for (double v : y) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::invalid_argument, "non-finite response value");
    }
  }
  const bool intercept = X.has_intercept_column();
  const std::size_t min_rows = intercept ? k + 1 : k;
  if (n < min_rows) {
    throw Error(ErrorCode::insufficient_data,
                std::to_string(n) + " observations cannot identify " +
                    std::to_string(k) + " parameters");
  }

  // Householder QR, reflectors applied in place to a working copy and to y.
  std::vector<double> a(n * k);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) a[i * k + j] = X(i, j);
  }
  std::vector<double> qty = y;
  std::vector<double> pivots(k, 0.0);
  for (std::size_t j = 0; j < k; ++j) {
    double norm2 = 0.0;
    for (std::size_t i = j; i < n; ++i) norm2 += a[i * k + j] * a[i * k + j];
    const double norm = std::sqrt(norm2);
    pivots[j] = norm;
    if (norm == 0.0) continue;  // dependent column; flagged by the rank check
    const double alpha = a[j * k + j] >= 0.0 ? -norm : norm;
    // Householder vector v = x - alpha*e_j, stored in the column tail.
    a[j * k + j] -= alpha;
    double vtv = 0.0;
    for (std::size_t i = j; i < n; ++i) vtv += a[i * k + j] * a[i * k + j];
    if (vtv > 0.0) {
      for (std::size_t c = j + 1; c < k; ++c) {
        double dot = 0.0;
        for (std::size_t i = j; i < n; ++i) dot += a[i * k + j] * a[i * k + c];
        const double scale = 2.0 * dot / vtv;
        for (std::size_t i = j; i < n; ++i) a[i * k + c] -= scale * a[i * k + j];
      }
      double dot = 0.0;
      for (std::size_t i = j; i < n; ++i) dot += a[i * k + j] * qty[i];
      const double scale = 2.0 * dot / vtv;
      for (std::size_t i = j; i < n; ++i) qty[i] -= scale * a[i * k + j];
    }
    a[j * k + j] = alpha;  // R diagonal; the strict lower part is junk now
  }

  double max_pivot = 0.0;
  for (double p : pivots) max_pivot = std::max(max_pivot, std::fabs(p));
  for (std::size_t j = 0; j < k; ++j) {
    if (std::fabs(a[j * k + j]) < kRankTolerance * max_pivot ||
        max_pivot == 0.0) {
      throw Error(ErrorCode::singular_design,
                  "column '" + X.column_names()[j] +
                      "' is linearly dependent on the preceding columns");
    }
  }

  // Back-substitute R beta = (Q^T y)[0..k).
  std::vector<double> beta(k, 0.0);
  for (std::size_t jj = k; jj-- > 0;) {
    double s = qty[jj];
    for (std::size_t c = jj + 1; c < k; ++c) s -= a[jj * k + c] * beta[c];
    beta[jj] = s / a[jj * k + jj];
  }

  RegressionFit fit;
  fit.beta = beta;
  fit.n_obs = n;
  fit.n_params = k;
  fit.has_intercept = intercept;
  fit.column_names = X.column_names();
  fit.residuals.resize(n);
  double ssr = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double yhat = 0.0;
    for (std::size_t j = 0; j < k; ++j) yhat += X(i, j) * beta[j];
    fit.residuals[i] = y[i] - yhat;
    ssr += fit.residuals[i] * fit.residuals[i];
  }
  fit.ssr = ssr;
  fit.sigma2 = n > k ? ssr / static_cast<double>(n - k) : 0.0;

  // diag((X^T X)^-1) = row sums of squares of R^-1 (upper triangular).
  std::vector<double> rinv(k * k, 0.0);
  for (std::size_t j = 0; j < k; ++j) {
    rinv[j * k + j] = 1.0 / a[j * k + j];
    for (std::size_t i = j; i-- > 0;) {
      double s = 0.0;
      for (std::size_t m = i + 1; m <= j; ++m) {
        s += a[i * k + m] * rinv[m * k + j];
      }
      rinv[i * k + j] = -s / a[i * k + i];
    }
  }
  fit.se_beta.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    double diag = 0.0;
    for (std::size_t m = i; m < k; ++m) diag += rinv[i * k + m] * rinv[i * k + m];
    fit.se_beta[i] = std::sqrt(fit.sigma2 * diag);
  }

  double tss = 0.0;
  if (intercept) {
    double mean = 0.0;
    for (double v : y) mean += v;
    mean /= static_cast<double>(n);
    for (double v : y) tss += (v - mean) * (v - mean);
  } else {
    for (double v : y) tss += v * v;
  }
  fit.r_squared = tss > 0.0 ? 1.0 - ssr / tss : 1.0;
  if (intercept) {
    fit.r_squared = std::min(1.0, std::max(0.0, fit.r_squared));
  }
  return fit;
}

std::vector<double> predict(const RegressionFit& fit,
                            const DesignMatrix& X_new) {
  if (X_new.cols() != fit.n_params) {
    throw Error(ErrorCode::arity_mismatch,
                "design has " + std::to_string(X_new.cols()) +
                    " columns, fit expects " + std::to_string(fit.n_params));
  }
  std::vector<double> out(X_new.rows(), 0.0);
  for (std::size_t i = 0; i < X_new.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < fit.n_params; ++j) {
      s += X_new(i, j) * fit.beta[j];
    }
    out[i] = s;
  }
  return out;
}

FTestResult f_test_nested(const RegressionFit& restricted,
                          const RegressionFit& unrestricted) {
  if (restricted.n_obs != unrestricted.n_obs) {
    throw Error(ErrorCode::invalid_nesting,
                "nested fits must share the response (n_obs " +
                    std::to_string(restricted.n_obs) + " vs " +
                    std::to_string(unrestricted.n_obs) + ")");
  }
  if (unrestricted.n_params <= restricted.n_params) {
    throw Error(ErrorCode::invalid_nesting,
                "unrestricted model must add parameters");
  }
  const double slack = 1e-10 * (1.0 + unrestricted.ssr);
  if (restricted.ssr < unrestricted.ssr - slack) {
    throw Error(ErrorCode::invalid_nesting,
                "restricted SSR is below unrestricted SSR; models are not "
                "nested on the same response");
  }
  const std::size_t n = unrestricted.n_obs;
  const std::size_t q = unrestricted.n_params - restricted.n_params;
  if (n <= unrestricted.n_params) {
    throw Error(ErrorCode::insufficient_data,
                "no residual degrees of freedom for the F denominator");
  }
  const std::size_t df_den = n - unrestricted.n_params;
  const double num =
      std::max(0.0, restricted.ssr - unrestricted.ssr) / static_cast<double>(q);
  FTestResult out;
  out.df_num = q;
  out.df_den = df_den;
  if (unrestricted.ssr <= 0.0) {
    out.f_stat = num == 0.0 ? 0.0 : kFStatCap;  // perfect-fit limit, capped
    out.p_value = num == 0.0 ? 1.0 : 0.0;
    return out;
  }
  out.f_stat = num / (unrestricted.ssr / static_cast<double>(df_den));
  out.p_value = f_upper_tail(out.f_stat, static_cast<double>(q),
                             static_cast<double>(df_den));
  return out;
}

}  // namespace revcast

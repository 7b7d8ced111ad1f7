#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace revcast {

/// Dense regressor matrix with named columns. Construction validates
/// finiteness and rejects exactly-duplicated columns (naming the duplicate).
class DesignMatrix {
 public:
  DesignMatrix(std::vector<std::string> column_names,
               const std::vector<std::vector<double>>& rows);

  static DesignMatrix from_columns(std::vector<std::string> column_names,
                                   const std::vector<std::vector<double>>& columns);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }
  const std::vector<std::string>& column_names() const { return names_; }

  /// True when some column is constant and nonzero (an intercept in the
  /// usual sense); controls which fit diagnostics are meaningful.
  bool has_intercept_column() const;

 private:
  DesignMatrix() = default;
  void validate() const;

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;  // row-major
  std::vector<std::string> names_;
};

struct RegressionFit {
  std::vector<double> beta;
  std::vector<double> residuals;
  std::vector<double> se_beta;
  double sigma2 = 0.0;     // SSR / (n - k)
  double r_squared = 0.0;  // centered when an intercept column is present
  double ssr = 0.0;
  std::size_t n_obs = 0;
  std::size_t n_params = 0;
  bool has_intercept = false;
  std::vector<std::string> column_names;
};

struct FTestResult {
  double f_stat = 0.0;
  std::size_t df_num = 0;
  std::size_t df_den = 0;
  double p_value = 1.0;
};

/// Least squares via Householder QR (never the normal equations). A QR
/// pivot below 1e-10 x (largest pivot) raises singular-design naming the
/// offending column.
RegressionFit ols_fit(const DesignMatrix& X, const std::vector<double>& y);

/// Out-of-sample X_new * beta; column count must match the fitted design.
std::vector<double> predict(const RegressionFit& fit, const DesignMatrix& X_new);

/// Restriction F-test for nested fits on the same response:
/// F = [(SSR_r - SSR_u)/q] / [SSR_u/(n - k_u)].
FTestResult f_test_nested(const RegressionFit& restricted,
                          const RegressionFit& unrestricted);

}  // namespace revcast

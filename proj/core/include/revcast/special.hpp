#pragma once

namespace revcast {

/// Regularized incomplete beta function I_x(a, b), a,b > 0, x in [0,1].
/// Continued-fraction evaluation; absolute accuracy ~1e-14 (target 1e-8).
double regularized_incomplete_beta(double a, double b, double x);

/// Standard normal CDF.
double normal_cdf(double z);

/// Student-t CDF and the two-sided tail probability P(|T| >= |t|).
double student_t_cdf(double t, double df);
double student_t_two_sided_p(double t, double df);

/// Upper tail P(F >= f) for the F(df1, df2) distribution; f < 0 gives 1.
double f_upper_tail(double f, double df1, double df2);

}  // namespace revcast

#pragma once

#include <string>

namespace marketreg {

// A probability in [0, 1]; construction clamps round-off excursions and
// rejects NaN.
class TailProbability {
 public:
  constexpr TailProbability() = default;
  explicit TailProbability(double value);

  double value() const noexcept { return value_; }
  operator double() const noexcept { return value_; }

 private:
  double value_ = 1.0;
};

// ln Gamma(x) for x > 0 (Lanczos below 10, Stirling series above).
double ln_gamma(double x);

// Regularized incomplete beta I_x(a, b).
double reg_inc_beta(double a, double b, double x);

// Regularized lower incomplete gamma P(s, x).
double reg_inc_gamma_lower(double s, double x);

// Student-t CDF with df degrees of freedom; df may be fractional but > 0.
double t_cdf(double t, double df);
// Pr(|T_df| >= |t|).
TailProbability t_two_sided_p(double t, double df);
// Inverse of t_cdf, p in (0, 1), bracketed bisection refined to 1e-10 in p.
double t_quantile(double p, double df);

// Upper tail of F(df1, df2).
TailProbability f_sf(double f, double df1, double df2);

// Upper tail of chi-square(df); defined as 1 - P(df/2, x/2).
TailProbability chi2_sf(double x, double df);

// Fixed 3-decimal p-value display; values below 5e-4 print as "0.000".
std::string format_p_value(double p);

}  // namespace marketreg

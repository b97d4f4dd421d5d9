#include "marketreg/distributions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <string>

#include "marketreg/errors.hpp"

namespace marketreg {
namespace {

constexpr double kEps = 1e-16;
constexpr double kTiny = 1e-300;
constexpr int kMaxIter = 10000;

// Lanczos approximation, g = 7, n = 9.
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

double lanczos_ln_gamma(double x) {
  // Valid for x >= 0.5.
  const double z = x - 1.0;
  double sum = kLanczos[0];
  for (int i = 1; i < 9; ++i) sum += kLanczos[i] / (z + i);
  const double t = z + 7.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(sum);
}

double stirling_ln_gamma(double x) {
  // Asymptotic series with Bernoulli terms through B_12.
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  const double series =
      inv * (1.0 / 12.0 -
             inv2 * (1.0 / 360.0 -
                     inv2 * (1.0 / 1260.0 -
                             inv2 * (1.0 / 1680.0 -
                                     inv2 * (1.0 / 1188.0 - inv2 * (691.0 / 360360.0))))));
  return (x - 0.5) * std::log(x) - x + 0.5 * std::log(2.0 * std::numbers::pi) + series;
}

// Modified Lentz continued fraction for I_x(a, b), used where x < (a+1)/(a+b+2).
double beta_continued_fraction(double a, double b, double x) {
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) return h;
  }
  throw DomainError("reg_inc_beta: continued fraction did not converge");
}

double gamma_series(double s, double x, double gln) {
  double ap = s;
  double sum = 1.0 / s;
  double del = sum;
  for (int n = 0; n < kMaxIter; ++n) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::fabs(del) < std::fabs(sum) * kEps) {
      return sum * std::exp(-x + s * std::log(x) - gln);
    }
  }
  throw DomainError("reg_inc_gamma_lower: series did not converge");
}

// Upper regularized gamma Q(s, x) by continued fraction, x >= s + 1.
double gamma_continued_fraction(double s, double x, double gln) {
  double b = x + 1.0 - s;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= kMaxIter; ++i) {
    const double an = -i * (i - s);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) return std::exp(-x + s * std::log(x) - gln) * h;
  }
  throw DomainError("reg_inc_gamma_lower: continued fraction did not converge");
}

void require_df(double df, const char* who) {
  if (!(df > 0.0) || !std::isfinite(df))
    throw DomainError(std::string(who) + ": degrees of freedom must be positive");
}

}  // namespace

TailProbability::TailProbability(double value) {
  if (std::isnan(value)) throw DomainError("tail probability is NaN");
  value_ = std::clamp(value, 0.0, 1.0);
}

double ln_gamma(double x) {
  if (!(x > 0.0) || std::isinf(x)) throw DomainError("ln_gamma: x must be positive and finite");
  if (x >= 10.0) return stirling_ln_gamma(x);
  if (x >= 0.5) return lanczos_ln_gamma(x);
  // Gamma(x) = Gamma(x + 1) / x keeps the Lanczos argument in range.
  return lanczos_ln_gamma(x + 1.0) - std::log(x);
}

double reg_inc_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b))
    throw DomainError("reg_inc_beta: shape parameters must be positive");
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("reg_inc_beta: x must lie in [0, 1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double ln_front = ln_gamma(a + b) - ln_gamma(a) - ln_gamma(b) + a * std::log(x) +
                          b * std::log1p(-x);
  const double front = std::exp(ln_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(a, b, x) / a;
  return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double reg_inc_gamma_lower(double s, double x) {
  if (!(s > 0.0) || !std::isfinite(s)) throw DomainError("reg_inc_gamma_lower: s must be positive");
  if (!(x >= 0.0)) throw DomainError("reg_inc_gamma_lower: x must be non-negative");
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  const double gln = ln_gamma(s);
  if (x < s + 1.0) return std::min(1.0, gamma_series(s, x, gln));
  return std::max(0.0, 1.0 - gamma_continued_fraction(s, x, gln));
}

double t_cdf(double t, double df) {
  require_df(df, "t_cdf");
  if (std::isnan(t)) throw DomainError("t_cdf: t is NaN");
  if (std::isinf(t)) return t > 0 ? 1.0 : 0.0;
  const double tail = 0.5 * reg_inc_beta(0.5 * df, 0.5, df / (df + t * t));
  return t > 0 ? 1.0 - tail : tail;
}

TailProbability t_two_sided_p(double t, double df) {
  require_df(df, "t_two_sided_p");
  if (std::isnan(t)) throw DomainError("t_two_sided_p: t is NaN");
  if (std::isinf(t)) return TailProbability(0.0);
  return TailProbability(reg_inc_beta(0.5 * df, 0.5, df / (df + t * t)));
}

double t_quantile(double p, double df) {
  require_df(df, "t_quantile");
  if (!(p > 0.0 && p < 1.0)) throw DomainError("t_quantile: p must lie in (0, 1)");
  if (p == 0.5) return 0.0;
  // Solve in the upper half and reflect.
  const double q = p > 0.5 ? p : 1.0 - p;
  double lo = 0.0;
  double hi = 1.0;
  while (t_cdf(hi, df) < q) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e300) break;
  }
  for (int i = 0; i < 400; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (t_cdf(mid, df) < q) lo = mid; else hi = mid;
    if (hi - lo <= 1e-15 * std::max(1.0, hi)) break;
  }
  const double t = 0.5 * (lo + hi);
  return p > 0.5 ? t : -t;
}

TailProbability f_sf(double f, double df1, double df2) {
  require_df(df1, "f_sf");
  require_df(df2, "f_sf");
  if (!(f >= 0.0)) throw DomainError("f_sf: statistic must be non-negative");
  if (f == 0.0) return TailProbability(1.0);
  if (std::isinf(f)) return TailProbability(0.0);
  return TailProbability(reg_inc_beta(0.5 * df2, 0.5 * df1, df2 / (df2 + df1 * f)));
}

TailProbability chi2_sf(double x, double df) {
  require_df(df, "chi2_sf");
  if (!(x >= 0.0)) throw DomainError("chi2_sf: statistic must be non-negative");
  return TailProbability(1.0 - reg_inc_gamma_lower(0.5 * df, 0.5 * x));
}

std::string format_p_value(double p) {
  if (std::isnan(p)) return "nan";
  if (p < 5e-4) return "0.000";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", p);
  return buf;
}

}  // namespace marketreg

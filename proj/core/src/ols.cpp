#include "marketreg/ols.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "marketreg/distributions.hpp"
#include "marketreg/errors.hpp"

namespace marketreg {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kExactFitTol = 1e-13;

void check_level(double level) {
  if (!(level > 0.0 && level < 1.0)) throw InvalidInput("confidence level must lie in (0, 1)");
}

double t_statistic(double coef, double std_err) {
  if (std_err > 0.0) return coef / std_err;
  if (coef == 0.0) return 0.0;
  return std::copysign(std::numeric_limits<double>::infinity(), coef);
}

}  // namespace

std::vector<std::size_t> FitResult::retained_columns() const {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < retained.size(); ++j)
    if (retained[j]) out.push_back(j);
  return out;
}

std::optional<std::size_t> FitResult::max_p_column() const {
  std::optional<std::size_t> best;
  for (std::size_t j = 0; j < retained.size(); ++j) {
    if (!retained[j] || std::isnan(p_values[j])) continue;
    if (!best || p_values[j] > p_values[*best]) best = j;
  }
  return best;
}

double log_likelihood(double rss, std::size_t n) {
  if (n == 0) throw InvalidInput("log_likelihood: n must be positive");
  if (!(rss >= 0.0)) throw InvalidInput("log_likelihood: rss must be non-negative");
  if (rss == 0.0) return kNaN;
  const double nn = static_cast<double>(n);
  return -0.5 * nn * (std::log(2.0 * std::numbers::pi) + 1.0 + std::log(rss / nn));
}

InformationCriteria information_criteria(double log_likelihood, std::size_t k_params,
                                         std::size_t n) {
  if (k_params == 0 || n == 0) throw InvalidInput("information_criteria: k and n must be >= 1");
  const double k = static_cast<double>(k_params);
  return {-2.0 * log_likelihood + 2.0 * k,
          -2.0 * log_likelihood + k * std::log(static_cast<double>(n))};
}

double adjusted_r_squared(double r_squared, std::size_t n_obs, std::size_t df_resid,
                          bool has_bias) {
  if (df_resid == 0) return kNaN;
  const double c = has_bias ? 1.0 : 0.0;
  return 1.0 - (1.0 - r_squared) * (static_cast<double>(n_obs) - c) /
                   static_cast<double>(df_resid);
}

double f_statistic(double r_squared, std::size_t df_model, std::size_t df_resid) {
  if (df_model == 0 || df_resid == 0) return kNaN;
  return (r_squared / static_cast<double>(df_model)) /
         ((1.0 - r_squared) / static_cast<double>(df_resid));
}

namespace {

// crit is the two-sided t critical value for the confidence level.
CoefficientRow row_with_critical(std::string name, double coef, double std_err, double df,
                                 double crit) {
  const double t = t_statistic(coef, std_err);
  return {std::move(name), coef,           std_err,
          t,               t_two_sided_p(t, df), coef - crit * std_err,
          coef + crit * std_err};
}

}  // namespace

CoefficientRow coefficient_row(std::string name, double coef, double std_err,
                               std::size_t df_resid, double level) {
  check_level(level);
  if (df_resid == 0) throw InferenceUnavailable("coefficient_row: no residual degrees of freedom");
  const double df = static_cast<double>(df_resid);
  return row_with_critical(std::move(name), coef, std_err, df, t_quantile(0.5 * (1.0 + level), df));
}

std::vector<CoefficientRow> coefficient_table(const FitResult& fit, double level) {
  if (!fit.inference_available)
    throw InferenceUnavailable("coefficient_table: fit has no residual degrees of freedom");
  std::vector<CoefficientRow> rows;
  for (std::size_t j : fit.retained_columns())
    rows.push_back(coefficient_row(fit.column_names[j], fit.coefficients[j], fit.std_errors[j],
                                   fit.df_resid, level));
  return rows;
}

FitResult fit_ols(const Matrix& design, std::span<const double> response,
                  std::vector<std::string> column_names,
                  std::optional<std::size_t> bias_column, const FitOptions& options) {
  check_level(options.confidence_level);
  const std::size_t n = design.rows();
  const std::size_t p = design.cols();
  if (n == 0 || p == 0) throw InvalidInput("fit_ols: empty design");
  if (response.size() != n) throw InvalidInput("fit_ols: response length differs from rows");
  if (column_names.size() != p) throw InvalidInput("fit_ols: one name per column is required");
  if (bias_column && *bias_column >= p) throw InvalidInput("fit_ols: bias column out of range");

  const QrFactors factors = qr_pivoted(design, options.rank_tol);
  const LeastSquaresSolution sol = least_squares_solve(design, factors, response);
  if (sol.rank == 0) throw DegenerateModel("fit_ols: design has rank 0");

  FitResult fit;
  fit.column_names = std::move(column_names);
  fit.dropped_columns = sol.dropped_columns;
  fit.retained.assign(p, true);
  for (std::size_t j : sol.dropped_columns) fit.retained[j] = false;

  fit.n_obs = n;
  fit.k_params = sol.rank;
  fit.has_bias = bias_column && *bias_column < p && fit.retained[*bias_column];
  fit.df_model = fit.k_params - (fit.has_bias ? 1 : 0);
  fit.df_resid = n - fit.k_params;
  fit.coefficients = sol.coefficients;
  fit.rss = sol.rss;
  fit.confidence_level = options.confidence_level;

  fit.response.assign(response.begin(), response.end());
  fit.fitted = design * fit.coefficients;
  fit.residuals.resize(n);
  for (std::size_t i = 0; i < n; ++i) fit.residuals[i] = fit.response[i] - fit.fitted[i];

  // A residual norm at round-off level relative to the response is an exact fit.
  if (std::sqrt(fit.rss) <= kExactFitTol * norm2(response)) {
    fit.rss = 0.0;
    fit.fitted = fit.response;
    std::fill(fit.residuals.begin(), fit.residuals.end(), 0.0);
  }

  double mean = 0.0;
  if (fit.has_bias) {
    for (double v : response) mean += v;
    mean /= static_cast<double>(n);
  }
  double tss = 0.0;
  for (double v : response) tss += (v - mean) * (v - mean);
  if (!(tss > 0.0)) throw DegenerateModel("fit_ols: response has zero total sum of squares");
  fit.tss = tss;
  fit.r_squared = 1.0 - fit.rss / tss;

  fit.inference_available = fit.df_resid >= 1;
  fit.std_errors.assign(p, kNaN);
  fit.t_values.assign(p, kNaN);
  fit.p_values.assign(p, kNaN);
  fit.ci_low.assign(p, kNaN);
  fit.ci_high.assign(p, kNaN);
  fit.adj_r_squared = adjusted_r_squared(fit.r_squared, n, fit.df_resid, fit.has_bias);
  fit.f_statistic = kNaN;
  fit.f_p_value = kNaN;

  if (fit.inference_available) {
    const double sigma2 = fit.rss / static_cast<double>(fit.df_resid);
    const Matrix cov = unscaled_covariance(factors);
    const std::vector<std::size_t> kept = factors.retained_columns();
    const double df = static_cast<double>(fit.df_resid);
    const double crit = t_quantile(0.5 * (1.0 + options.confidence_level), df);
    for (std::size_t a = 0; a < kept.size(); ++a) {
      const std::size_t j = kept[a];
      const CoefficientRow row = row_with_critical(fit.column_names[j], fit.coefficients[j],
                                                   std::sqrt(sigma2 * cov(a, a)), df, crit);
      fit.std_errors[j] = row.std_err;
      fit.t_values[j] = row.t;
      fit.p_values[j] = row.p;
      fit.ci_low[j] = row.ci_low;
      fit.ci_high[j] = row.ci_high;
    }
    fit.f_available = fit.df_model >= 1 && fit.r_squared < 1.0;
    if (fit.f_available) {
      fit.f_statistic = f_statistic(fit.r_squared, fit.df_model, fit.df_resid);
      fit.f_p_value = f_sf(fit.f_statistic, static_cast<double>(fit.df_model),
                           static_cast<double>(fit.df_resid));
    }
  }

  fit.likelihood_available = fit.rss > 0.0;
  fit.log_likelihood = log_likelihood(fit.rss, n);
  if (fit.likelihood_available) {
    const InformationCriteria ic = information_criteria(fit.log_likelihood, fit.k_params, n);
    fit.aic = ic.aic;
    fit.bic = ic.bic;
  } else {
    fit.aic = kNaN;
    fit.bic = kNaN;
  }
  return fit;
}

FitResult fit_ols(const EncodedDataset& data, const FitOptions& options) {
  return fit_ols(data.design, data.response, data.column_names(), data.bias_index(), options);
}

}  // namespace marketreg

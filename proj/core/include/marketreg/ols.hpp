#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "marketreg/features.hpp"
#include "marketreg/matrix.hpp"
#include "marketreg/qr.hpp"

namespace marketreg {

// Ordinary least squares fit with the classical (nonrobust) inferential
// summary. Per-column vectors have one entry per design column; entries for
// rank-dropped columns are 0 (coefficients) or NaN (everything inferential).
struct FitResult {
  std::vector<std::string> column_names;
  std::vector<bool> retained;
  std::vector<std::size_t> dropped_columns;

  std::size_t n_obs = 0;
  std::size_t k_params = 0;
  std::size_t df_model = 0;
  std::size_t df_resid = 0;
  bool has_bias = false;

  Vector coefficients;
  Vector std_errors;
  Vector t_values;
  Vector p_values;
  double confidence_level = 0.95;
  Vector ci_low;
  Vector ci_high;

  double rss = 0.0;
  double tss = 0.0;
  double r_squared = 0.0;
  double adj_r_squared = 0.0;
  double f_statistic = 0.0;
  double f_p_value = 0.0;
  double log_likelihood = 0.0;
  double aic = 0.0;
  double bic = 0.0;

  // df_resid >= 1: std errors, t, p, CIs, adj-R^2 and F are meaningful.
  bool inference_available = false;
  // rss > 0: log-likelihood, AIC and BIC are finite.
  bool likelihood_available = false;
  // df_model >= 1 and R^2 < 1 in addition to inference_available.
  bool f_available = false;

  Vector response;
  Vector fitted;
  Vector residuals;
  std::string covariance_type = "nonrobust";

  std::vector<std::size_t> retained_columns() const;
  // Largest p-value among retained columns; ties go to the lowest index.
  std::optional<std::size_t> max_p_column() const;
};

struct FitOptions {
  double confidence_level = 0.95;
  double rank_tol = kDefaultRankTol;
};

// bias_column names the column of ones, if any. A fit whose residual norm is
// below 1e-13 of the response norm is reported as exact (rss = 0, residuals 0). R^2 is centered when that
// column is retained and uncentered otherwise. Throws DegenerateModel when the
// total sum of squares is zero.
FitResult fit_ols(const Matrix& design, std::span<const double> response,
                  std::vector<std::string> column_names,
                  std::optional<std::size_t> bias_column, const FitOptions& options = {});
FitResult fit_ols(const EncodedDataset& data, const FitOptions& options = {});

// Gaussian maximum log-likelihood with sigma^2 = rss / n. Returns NaN for a
// perfect fit (rss == 0), where the likelihood is unbounded.
double log_likelihood(double rss, std::size_t n);

struct InformationCriteria {
  double aic = 0.0;
  double bic = 0.0;
};

InformationCriteria information_criteria(double log_likelihood, std::size_t k_params,
                                         std::size_t n);

// 1 - (1 - R^2)(n - c)/df_resid with c = 1 when an intercept is present.
double adjusted_r_squared(double r_squared, std::size_t n_obs, std::size_t df_resid,
                          bool has_bias);
double f_statistic(double r_squared, std::size_t df_model, std::size_t df_resid);

struct CoefficientRow {
  std::string name;
  double coef = 0.0;
  double std_err = 0.0;
  double t = 0.0;
  double p = 1.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
};

// One row from a coefficient, its standard error and the residual df.
CoefficientRow coefficient_row(std::string name, double coef, double std_err,
                               std::size_t df_resid, double level = 0.95);

// Retained columns only. Throws InferenceUnavailable when df_resid == 0.
std::vector<CoefficientRow> coefficient_table(const FitResult& fit, double level = 0.95);

}  // namespace marketreg

#include "marketreg/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "marketreg/distributions.hpp"
#include "marketreg/errors.hpp"
#include "marketreg/qr.hpp"

namespace marketreg {
namespace {

constexpr double kBandTol = 1e-9;
constexpr double kCollinearTol = 1e-12;

struct AuxFit {
  double rss = 0.0;
  double tss = 0.0;  // centered
  std::size_t rank = 0;
};

AuxFit centered_regression(const Matrix& x, std::span<const double> y) {
  const LeastSquaresSolution sol = least_squares_solve(x, y);
  double mean = 0.0;
  for (double v : y) mean += v;
  mean /= static_cast<double>(y.size());
  double tss = 0.0;
  for (double v : y) tss += (v - mean) * (v - mean);
  return {sol.rss, tss, sol.rank};
}

}  // namespace

std::string to_string(BreuschPaganVariant variant) {
  return variant == BreuschPaganVariant::koenker ? "koenker" : "original";
}

BreuschPaganVariant parse_bp_variant(std::string_view text) {
  if (text == "koenker") return BreuschPaganVariant::koenker;
  if (text == "original") return BreuschPaganVariant::original;
  throw InvalidInput("unknown Breusch-Pagan variant \"" + std::string(text) + "\"");
}

BreuschPaganResult breusch_pagan(std::span<const double> residuals, const Matrix& regressors,
                                 bool has_bias, BreuschPaganVariant variant) {
  const std::size_t n = residuals.size();
  if (n == 0 || regressors.rows() != n)
    throw InvalidInput("breusch_pagan: residuals and regressors differ in length");

  const Matrix aux = has_bias ? regressors : regressors.with_column(Vector(n, 1.0));

  Vector target(n);
  double sum_sq = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    target[i] = residuals[i] * residuals[i];
    sum_sq += target[i];
  }

  BreuschPaganResult out;
  out.variant = variant;
  if (variant == BreuschPaganVariant::original) {
    if (!(sum_sq > 0.0)) throw DegenerateModel("breusch_pagan: all residuals are zero");
    const double sigma2 = sum_sq / static_cast<double>(n);
    for (double& v : target) v /= sigma2;
  }

  const AuxFit fit = centered_regression(aux, target);
  out.df = fit.rank > 0 ? fit.rank - 1 : 0;
  if (fit.tss <= 0.0 || out.df == 0) {
    out.lm_statistic = 0.0;
    out.p_value = 1.0;
    return out;
  }
  const double explained = std::max(0.0, fit.tss - fit.rss);
  if (variant == BreuschPaganVariant::koenker) {
    out.lm_statistic = static_cast<double>(n) * explained / fit.tss;
  } else {
    out.lm_statistic = 0.5 * explained;
  }
  out.p_value = chi2_sf(out.lm_statistic, static_cast<double>(out.df));
  return out;
}

BreuschPaganResult breusch_pagan(const FitResult& fit, const EncodedDataset& data,
                                 BreuschPaganVariant variant) {
  if (data.rows() != fit.n_obs || data.cols() != fit.retained.size())
    throw InvalidInput("breusch_pagan: fit was not produced from this dataset");
  if (fit.df_resid < 1) throw InferenceUnavailable("breusch_pagan: no residual degrees of freedom");
  const std::vector<std::size_t> kept = fit.retained_columns();
  return breusch_pagan(fit.residuals, data.design.select_columns(kept), fit.has_bias, variant);
}

std::string to_string(VifBand band) {
  switch (band) {
    case VifBand::uncorrelated: return "uncorrelated";
    case VifBand::moderate: return "moderate";
    case VifBand::high: return "high";
  }
  return "unknown";
}

VifBand vif_band(double v) {
  if (v <= 1.0 + kBandTol) return VifBand::uncorrelated;
  if (v <= 5.0 + kBandTol) return VifBand::moderate;
  return VifBand::high;
}

VifReport vif(const EncodedDataset& data) {
  const auto bias = data.bias_index();
  std::vector<std::size_t> targets;
  for (std::size_t j = 0; j < data.cols(); ++j)
    if (!bias || j != *bias) targets.push_back(j);
  if (targets.size() < 2) throw InvalidInput("vif: at least two non-bias columns are required");

  const std::size_t n = data.rows();
  VifReport report;
  for (std::size_t j : targets) {
    std::vector<std::size_t> others;
    for (std::size_t k = 0; k < data.cols(); ++k)
      if (k != j && (!bias || k != *bias)) others.push_back(k);
    const Matrix x = data.design.select_columns(others).with_column(Vector(n, 1.0));
    const Vector y = data.design.column(j);
    const AuxFit fit = centered_regression(x, y);

    VifEntry e;
    e.column = data.columns[j].name;
    if (fit.tss <= 0.0 || fit.rss <= kCollinearTol * fit.tss) {
      // Constant columns are collinear with the intercept.
      e.r_squared_aux = 1.0;
      e.vif = std::numeric_limits<double>::infinity();
      e.infinite = true;
      e.band = VifBand::high;
    } else {
      e.r_squared_aux = std::clamp(1.0 - fit.rss / fit.tss, 0.0, 1.0);
      e.vif = 1.0 / (1.0 - e.r_squared_aux);
      e.band = vif_band(e.vif);
    }
    report.entries.push_back(std::move(e));
  }
  return report;
}

MapeValue mape(std::span<const double> actual, std::span<const double> predicted) {
  if (actual.size() != predicted.size()) throw InvalidInput("mape: lengths differ");
  if (actual.empty()) throw InvalidInput("mape: empty input");
  double sum = 0.0;
  for (std::size_t i = 0; i < actual.size(); ++i) {
    if (actual[i] == 0.0)
      throw DivisionByZero(i, "mape: actual value at index " + std::to_string(i) + " is zero");
    sum += std::fabs(actual[i] - predicted[i]) / std::fabs(actual[i]);
  }
  return {100.0 * sum / static_cast<double>(actual.size())};
}

PlotSeries plot_series(const FitResult& fit) {
  PlotSeries out;
  out.residual_series.reserve(fit.n_obs);
  out.measured_predicted.reserve(fit.n_obs);
  for (std::size_t i = 0; i < fit.n_obs; ++i) {
    out.residual_series.emplace_back(fit.fitted[i], fit.residuals[i]);
    out.measured_predicted.emplace_back(fit.response[i], fit.fitted[i]);
  }
  return out;
}

}  // namespace marketreg

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "marketreg/features.hpp"
#include "marketreg/matrix.hpp"
#include "marketreg/ols.hpp"

namespace marketreg {

enum class BreuschPaganVariant { koenker, original };

std::string to_string(BreuschPaganVariant variant);
// Accepts "koenker" or "original"; throws InvalidInput otherwise.
BreuschPaganVariant parse_bp_variant(std::string_view text);

struct BreuschPaganResult {
  double lm_statistic = 0.0;
  std::size_t df = 0;
  double p_value = 1.0;
  BreuschPaganVariant variant = BreuschPaganVariant::koenker;
};

// Auxiliary regression of squared residuals on `regressors`. A column of ones
// is appended unless has_bias says one is already present. koenker:
// LM = n * R^2_aux. original: regress e^2 / (rss / n) and take LM = ESS / 2.
// Null hypothesis: homoscedastic errors.
BreuschPaganResult breusch_pagan(std::span<const double> residuals, const Matrix& regressors,
                                 bool has_bias,
                                 BreuschPaganVariant variant = BreuschPaganVariant::koenker);
// Uses the fit's retained design columns.
BreuschPaganResult breusch_pagan(const FitResult& fit, const EncodedDataset& data,
                                 BreuschPaganVariant variant = BreuschPaganVariant::koenker);

enum class VifBand { uncorrelated, moderate, high };

std::string to_string(VifBand band);

// Rule-of-thumb bands: 1 uncorrelated, (1, 5] moderate, above 5 high.
// Comparisons allow 1e-9 of round-off.
VifBand vif_band(double vif);

struct VifEntry {
  std::string column;
  double r_squared_aux = 0.0;
  double vif = 1.0;       // +inf when infinite
  bool infinite = false;  // column is an exact linear combination of the others
  VifBand band = VifBand::uncorrelated;
};

struct VifReport {
  std::vector<VifEntry> entries;
};

// One entry per non-bias column: R^2 from regressing it on every other
// column plus an intercept, vif = 1 / (1 - R^2).
VifReport vif(const EncodedDataset& data);

struct MapeValue {
  double percent = 0.0;
};

// (100 / n) * sum |actual - predicted| / |actual|. Throws DivisionByZero
// naming the first zero actual.
MapeValue mape(std::span<const double> actual, std::span<const double> predicted);

struct PlotSeries {
  std::vector<std::pair<double, double>> residual_series;     // (fitted, residual)
  std::vector<std::pair<double, double>> measured_predicted;  // (actual, fitted)
};

PlotSeries plot_series(const FitResult& fit);

}  // namespace marketreg

#pragma once

#include <optional>
#include <span>
#include <string>

#include <nlohmann/json.hpp>

#include "marketreg/diagnostics.hpp"
#include "marketreg/features.hpp"
#include "marketreg/ingest.hpp"
#include "marketreg/ols.hpp"
#include "marketreg/selection.hpp"

namespace marketreg::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* kDependentVariable = "market_value_m_eur";

// Display rounding shared by the text report and its consistency tests.
std::string format_fixed(double v, int decimals);
// printf "%#.<digits>g": keeps trailing zeros and the decimal point.
std::string format_general(double v, int digits);

// Regression summary laid out like a classic OLS results table: a header
// block of fit statistics, then coef / std err / t / P>|t| / CI per
// retained column.
std::string render_summary(const FitResult& fit, const std::string& dependent = kDependentVariable);

Json fit_to_json(const FitResult& fit);
Json columns_to_json(const EncodedDataset& data);
Json exclusions_to_json(std::span<const PlayerRecord> input, const FilterResult& filtered);
Json trace_to_json(const EliminationTrace& trace);
Json breusch_pagan_to_json(const BreuschPaganResult& bp);
Json vif_to_json(const VifReport& report);

// Shortest round-trip decimal form; used for plot CSVs.
std::string format_exact(double v);
std::string residuals_csv(const PlotSeries& series);
std::string measured_predicted_csv(const PlotSeries& series);

}  // namespace marketreg::cli

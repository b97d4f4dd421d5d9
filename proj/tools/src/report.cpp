#include "marketreg/cli/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "marketreg/distributions.hpp"

namespace marketreg::cli {
namespace {

constexpr int kWidth = 78;
constexpr const char* kUnavailable = "n/a";

std::string pad_right(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

std::string pad_left(const std::string& s, std::size_t width) {
  if (s.size() >= width) return s;
  return std::string(width - s.size(), ' ') + s;
}

std::string header_cell(const std::string& label, const std::string& value, std::size_t width) {
  const std::size_t gap = label.size() + value.size() < width ? width - label.size() - value.size() : 1;
  return label + std::string(gap, ' ') + value;
}

// NaN marks a statistic that is not defined for this fit.
Json number_or_null(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

}  // namespace

std::string format_fixed(double v, int decimals) {
  if (std::isnan(v)) return kUnavailable;
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  std::string s = buf;
  // "-0.0000" reads as a sign error in a table.
  if (s.find_first_not_of("-0.") == std::string::npos && s.front() == '-') s.erase(0, 1);
  return s;
}

std::string format_general(double v, int digits) {
  if (std::isnan(v)) return kUnavailable;
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%#.*g", digits, v);
  return buf;
}

std::string format_exact(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string render_summary(const FitResult& fit, const std::string& dependent) {
  const std::string rule(kWidth, '=');
  const std::string thin(kWidth, '-');
  std::ostringstream out;

  const std::string title = "OLS Regression Results";
  out << std::string((kWidth - title.size()) / 2, ' ') << title << '\n' << rule << '\n';

  const bool inf = fit.inference_available;
  const std::pair<std::string, std::string> left[] = {
      {"Dep. Variable:", dependent},
      {"Model:", "OLS"},
      {"Method:", "Least Squares"},
      {"No. Observations:", std::to_string(fit.n_obs)},
      {"Df Residuals:", std::to_string(fit.df_resid)},
      {"Df Model:", std::to_string(fit.df_model)},
      {"Covariance Type:", fit.covariance_type},
  };
  const std::pair<std::string, std::string> right[] = {
      {"R-squared:", format_fixed(fit.r_squared, 3)},
      {"Adj. R-squared:", inf ? format_fixed(fit.adj_r_squared, 3) : kUnavailable},
      {"F-statistic:", fit.f_available ? format_general(fit.f_statistic, 4) : kUnavailable},
      {"Prob (F-statistic):", fit.f_available ? format_general(fit.f_p_value, 3) : kUnavailable},
      {"Log-Likelihood:",
       fit.likelihood_available ? format_general(fit.log_likelihood, 5) : kUnavailable},
      {"AIC:", fit.likelihood_available ? format_general(fit.aic, 4) : kUnavailable},
      {"BIC:", fit.likelihood_available ? format_general(fit.bic, 4) : kUnavailable},
  };
  for (std::size_t i = 0; i < std::size(left); ++i) {
    out << header_cell(left[i].first, left[i].second, 38) << "   "
        << header_cell(right[i].first, right[i].second, 37) << '\n';
  }
  out << rule << '\n';

  std::size_t name_width = 8;
  for (std::size_t j : fit.retained_columns())
    name_width = std::max(name_width, fit.column_names[j].size() + 2);

  const double tail = 0.5 * (1.0 - fit.confidence_level);
  const std::string lo_label = "[" + format_fixed(tail, 3);
  const std::string hi_label = format_fixed(1.0 - tail, 3) + "]";
  out << pad_right("", name_width) << pad_left("coef", 11) << pad_left("std err", 11)
      << pad_left("t", 11) << pad_left("P>|t|", 11) << pad_left(lo_label, 11)
      << pad_left(hi_label, 11) << '\n';
  out << std::string(name_width + 66, '-') << '\n';

  for (std::size_t j : fit.retained_columns()) {
    out << pad_right(fit.column_names[j], name_width)
        << pad_left(format_fixed(fit.coefficients[j], 4), 11);
    if (inf) {
      out << pad_left(format_fixed(fit.std_errors[j], 4), 11)
          << pad_left(format_fixed(fit.t_values[j], 3), 11)
          << pad_left(format_p_value(fit.p_values[j]), 11)
          << pad_left(format_fixed(fit.ci_low[j], 4), 11)
          << pad_left(format_fixed(fit.ci_high[j], 4), 11);
    } else {
      for (int c = 0; c < 5; ++c) out << pad_left(kUnavailable, 11);
    }
    out << '\n';
  }
  out << rule << '\n';

  if (!fit.dropped_columns.empty()) {
    out << "Rank-deficient design: " << fit.dropped_columns.size()
        << " column(s) dropped with coefficient 0:\n";
    for (std::size_t j : fit.dropped_columns) out << "  " << fit.column_names[j] << '\n';
  }
  if (!inf) out << "No residual degrees of freedom: inference is unavailable.\n";
  if (!fit.likelihood_available) out << "Exact fit: log-likelihood is unbounded.\n";
  return out.str();
}

Json fit_to_json(const FitResult& fit) {
  Json j;
  j["model"] = "OLS";
  j["covariance_type"] = fit.covariance_type;
  j["n_obs"] = fit.n_obs;
  j["k_params"] = fit.k_params;
  j["df_model"] = fit.df_model;
  j["df_resid"] = fit.df_resid;
  j["has_bias"] = fit.has_bias;
  j["inference_available"] = fit.inference_available;
  j["likelihood_available"] = fit.likelihood_available;
  j["confidence_level"] = fit.confidence_level;
  j["r_squared"] = number_or_null(fit.r_squared);
  j["adj_r_squared"] = number_or_null(fit.adj_r_squared);
  j["f_statistic"] = number_or_null(fit.f_statistic);
  j["f_p_value"] = number_or_null(fit.f_p_value);
  j["log_likelihood"] = number_or_null(fit.log_likelihood);
  j["aic"] = number_or_null(fit.aic);
  j["bic"] = number_or_null(fit.bic);
  j["rss"] = fit.rss;
  j["tss"] = fit.tss;

  Json coefs = Json::array();
  for (std::size_t c = 0; c < fit.column_names.size(); ++c) {
    Json row;
    row["name"] = fit.column_names[c];
    row["retained"] = static_cast<bool>(fit.retained[c]);
    row["coef"] = fit.coefficients[c];
    row["std_err"] = number_or_null(fit.std_errors[c]);
    row["t"] = number_or_null(fit.t_values[c]);
    row["p"] = number_or_null(fit.p_values[c]);
    row["ci_low"] = number_or_null(fit.ci_low[c]);
    row["ci_high"] = number_or_null(fit.ci_high[c]);
    coefs.push_back(std::move(row));
  }
  j["coefficients"] = std::move(coefs);
  Json dropped = Json::array();
  for (std::size_t c : fit.dropped_columns) dropped.push_back(fit.column_names[c]);
  j["dropped_columns"] = std::move(dropped);
  j["fitted"] = fit.fitted;
  j["residuals"] = fit.residuals;
  return j;
}

Json columns_to_json(const EncodedDataset& data) {
  Json cols = Json::array();
  for (const auto& c : data.columns) {
    Json col;
    col["name"] = c.name;
    col["kind"] = to_string(c.kind);
    col["source_attribute"] = c.source_attribute;
    col["level"] = c.level ? Json(*c.level) : Json(nullptr);
    cols.push_back(std::move(col));
  }
  Json std_params = Json::array();
  for (const auto& s : data.standardization) {
    Json p;
    p["column"] = s.column;
    p["mean"] = s.mean;
    p["stddev"] = s.stddev;
    p["zero_variance"] = s.zero_variance;
    std_params.push_back(std::move(p));
  }
  Json j;
  j["columns"] = std::move(cols);
  j["standardization"] = std::move(std_params);
  return j;
}

Json exclusions_to_json(std::span<const PlayerRecord> input, const FilterResult& filtered) {
  Json j;
  j["records"] = input.size();
  j["accepted"] = filtered.accepted.size();
  Json log = Json::array();
  for (const auto& e : filtered.log) {
    Json entry;
    entry["name"] = e.name;
    entry["rule"] = to_string(e.rule);
    log.push_back(std::move(entry));
  }
  j["excluded"] = std::move(log);
  return j;
}

Json trace_to_json(const EliminationTrace& trace) {
  Json j;
  j["alpha"] = trace.alpha;
  j["rank_dropped"] = trace.rank_dropped;
  Json steps = Json::array();
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const auto& s = trace.steps[i];
    Json step;
    step["step"] = i + 1;
    step["removed_column"] = s.removed_column;
    step["removed_p_value"] = s.removed_p_value;
    step["model_after"] = {{"k_params", s.model_after.k_params},
                           {"r_squared", number_or_null(s.model_after.r_squared)},
                           {"adj_r_squared", number_or_null(s.model_after.adj_r_squared)}};
    steps.push_back(std::move(step));
  }
  j["steps"] = std::move(steps);
  Json final_cols = Json::array();
  for (std::size_t c : trace.final_fit.retained_columns())
    final_cols.push_back(trace.final_fit.column_names[c]);
  j["final_columns"] = std::move(final_cols);
  j["no_conforming_model"] = trace.no_conforming_model;
  return j;
}

Json breusch_pagan_to_json(const BreuschPaganResult& bp) {
  Json j;
  j["variant"] = to_string(bp.variant);
  j["lm_statistic"] = bp.lm_statistic;
  j["df"] = bp.df;
  j["p_value"] = bp.p_value;
  return j;
}

Json vif_to_json(const VifReport& report) {
  Json arr = Json::array();
  for (const auto& e : report.entries) {
    Json entry;
    entry["column"] = e.column;
    entry["r_squared_aux"] = e.r_squared_aux;
    entry["vif"] = number_or_null(e.vif);
    entry["infinite"] = e.infinite;
    entry["band"] = to_string(e.band);
    arr.push_back(std::move(entry));
  }
  return arr;
}

std::string residuals_csv(const PlotSeries& series) {
  std::string out = "fitted,residual\n";
  for (const auto& [fitted, residual] : series.residual_series)
    out += format_exact(fitted) + "," + format_exact(residual) + "\n";
  return out;
}

std::string measured_predicted_csv(const PlotSeries& series) {
  std::string out = "actual,predicted\n";
  for (const auto& [actual, predicted] : series.measured_predicted)
    out += format_exact(actual) + "," + format_exact(predicted) + "\n";
  return out;
}

}  // namespace marketreg::cli

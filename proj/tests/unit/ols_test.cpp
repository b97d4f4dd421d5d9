#include <array>
#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "helpers.hpp"
#include "marketreg/distributions.hpp"
#include "marketreg/errors.hpp"
#include "marketreg/features.hpp"
#include "marketreg/ols.hpp"
#include "oracles.hpp"

using namespace marketreg;
using testing_helpers::rel_diff;
using testing_helpers::to_matrix;

TEST(FitOls, HandExample) {
  const Matrix x{{1, 0}, {1, 1}, {1, 2}};
  const std::vector<double> y = {0, 1, 1};
  const FitResult f = fit_ols(x, y, {"const", "x"}, 0);
  EXPECT_NEAR(f.coefficients[0], 1.0 / 6.0, 1e-14);
  EXPECT_NEAR(f.coefficients[1], 0.5, 1e-14);
  EXPECT_NEAR(f.rss, 1.0 / 6.0, 1e-14);
  EXPECT_NEAR(f.tss, 2.0 / 3.0, 1e-14);
  EXPECT_NEAR(f.r_squared, 0.75, 1e-14);
  EXPECT_EQ(f.n_obs, 3u);
  EXPECT_EQ(f.k_params, 2u);
  EXPECT_EQ(f.df_model, 1u);
  EXPECT_EQ(f.df_resid, 1u);
  EXPECT_TRUE(f.has_bias);
  EXPECT_EQ(f.covariance_type, "nonrobust");
  EXPECT_NEAR(f.residuals[0], -1.0 / 6.0, 1e-14);
  EXPECT_NEAR(f.residuals[1], 1.0 / 3.0, 1e-14);
  EXPECT_NEAR(f.residuals[2], -1.0 / 6.0, 1e-14);
  // sigma^2 = 1/6, (X'X)^-1 = [[5/6, -1/2], [-1/2, 1/2]].
  EXPECT_NEAR(f.std_errors[1], std::sqrt(1.0 / 12.0), 1e-14);
  EXPECT_NEAR(f.std_errors[0], std::sqrt(5.0 / 36.0), 1e-14);
}

TEST(FitOls, ExactLine) {
  const Matrix x{{1, 0}, {1, 1}, {1, 2}, {1, 3}};
  const std::vector<double> y = {1, 3, 5, 7};
  const FitResult f = fit_ols(x, y, {"const", "x"}, 0);
  EXPECT_EQ(f.rss, 0.0);
  EXPECT_EQ(f.r_squared, 1.0);
  for (double r : f.residuals) EXPECT_EQ(r, 0.0);
  EXPECT_FALSE(f.likelihood_available);
  EXPECT_TRUE(std::isnan(f.log_likelihood));
  EXPECT_TRUE(std::isnan(f.aic));
  EXPECT_FALSE(f.f_available);
}

TEST(FitOls, ZeroResidualDfFlagsInference) {
  const Matrix x{{1, 0}, {1, 1}};
  const std::vector<double> y = {2, 5};
  const FitResult f = fit_ols(x, y, {"const", "x"}, 0);
  EXPECT_EQ(f.df_resid, 0u);
  EXPECT_FALSE(f.inference_available);
  EXPECT_NEAR(f.coefficients[1], 3.0, 1e-14);
  EXPECT_TRUE(std::isnan(f.std_errors[0]));
  EXPECT_THROW(coefficient_table(f), InferenceUnavailable);
}

TEST(FitOls, ZeroTssIsDegenerate) {
  const Matrix x{{1, 0}, {1, 1}, {1, 2}};
  const std::vector<double> y = {4, 4, 4};
  EXPECT_THROW(fit_ols(x, y, {"const", "x"}, 0), DegenerateModel);
  const std::vector<double> zeros = {0, 0, 0};
  EXPECT_THROW(fit_ols(x, zeros, {"const", "x"}, std::nullopt), DegenerateModel);
}

TEST(FitOls, InputValidation) {
  const Matrix x{{1, 0}, {1, 1}, {1, 2}};
  const std::vector<double> y = {0, 1};
  EXPECT_THROW(fit_ols(x, y, {"const", "x"}, 0), InvalidInput);
  const std::vector<double> y3 = {0, 1, 1};
  EXPECT_THROW(fit_ols(x, y3, {"const"}, 0), InvalidInput);
  EXPECT_THROW(fit_ols(x, y3, {"const", "x"}, 5), InvalidInput);
}

TEST(FitOls, RankDeficientDesignDropsColumn) {
  const Matrix x{{1, 0, 0}, {1, 1, 2}, {1, 2, 4}, {1, 3, 6}, {1, 4, 8}};
  const std::vector<double> y = {0.1, 1.2, 1.9, 3.2, 3.9};
  const FitResult f = fit_ols(x, y, {"const", "a", "b"}, 0);
  EXPECT_EQ(f.k_params, 2u);
  ASSERT_EQ(f.dropped_columns.size(), 1u);
  const std::size_t d = f.dropped_columns[0];
  EXPECT_EQ(f.coefficients[d], 0.0);
  EXPECT_TRUE(std::isnan(f.p_values[d]));
  EXPECT_FALSE(f.retained[d]);
  EXPECT_EQ(f.df_resid, 3u);
  const FitResult g = fit_ols(x.select_columns(std::vector<std::size_t>{0, 1}), y, {"const", "a"}, 0);
  EXPECT_NEAR(f.rss, g.rss, 1e-12);
  EXPECT_NEAR(f.r_squared, g.r_squared, 1e-12);
}

TEST(FitStatistics, SelectedModelSummaryBlock) {
  EXPECT_NEAR(adjusted_r_squared(0.930, 105, 52, true), 0.860, 5e-4);
  EXPECT_NEAR(f_statistic(0.930, 52, 52), 13.2857, 5e-3);
  const auto ic = information_criteria(-363.75, 53, 105);
  EXPECT_NEAR(ic.aic, 833.5, 0.05);
  EXPECT_NEAR(ic.bic, 974.2, 0.05);
}

TEST(FitStatistics, FullAndNoInterceptSummaryBlocks) {
  const double adj1 = adjusted_r_squared(0.963, 105, 9, true);
  EXPECT_GE(adj1, 0.570);
  EXPECT_LE(adj1, 0.578);
  const auto ic1 = information_criteria(-329.96, 96, 105);
  EXPECT_NEAR(ic1.aic, 851.9, 0.05);
  EXPECT_NEAR(ic1.bic, 1107.0, 0.5);

  EXPECT_NEAR(adjusted_r_squared(0.944, 105, 80, false), 0.927, 1e-3);
  const auto ic7 = information_criteria(-410.63, 25, 105);
  EXPECT_NEAR(ic7.aic, 871.3, 0.05);
  EXPECT_NEAR(ic7.bic, 937.6, 0.05);
}

TEST(FitStatistics, InformationCriteriaTrivial) {
  const auto ic = information_criteria(0.0, 1, 1);
  EXPECT_EQ(ic.aic, 2.0);
  EXPECT_EQ(ic.bic, 0.0);
}

TEST(LogLikelihood, UnitVarianceAndScaleIdentity) {
  EXPECT_NEAR(log_likelihood(2.0, 2), -(std::log(2.0 * std::numbers::pi) + 1.0), 1e-14);
  EXPECT_NEAR(log_likelihood(2.0, 2), -2.8379, 1e-4);
  const double c = 3.7;
  EXPECT_NEAR(log_likelihood(5.0 * c * c, 20), log_likelihood(5.0, 20) - 20 * std::log(c), 1e-10);
  EXPECT_TRUE(std::isnan(log_likelihood(0.0, 5)));
}

TEST(CoefficientRow, ReferenceRows) {
  const auto x3 = coefficient_row("x3", 51.3703, 6.942, 52);
  EXPECT_NEAR(x3.t, 7.400, 5e-4);
  EXPECT_NEAR(x3.ci_low, 37.440, 1e-3);
  EXPECT_NEAR(x3.ci_high, 65.301, 1e-3);
  EXPECT_LT(x3.p, 5e-4);
  const auto x1 = coefficient_row("x1", 13.3396, 7.285, 52);
  EXPECT_NEAR(x1.t, 1.831, 5e-4);
  EXPECT_EQ(format_p_value(x1.p), "0.073");
}

TEST(CoefficientRow, ZeroCoefficient) {
  const auto r = coefficient_row("z", 0.0, 2.0, 10);
  EXPECT_EQ(r.t, 0.0);
  EXPECT_EQ(r.p, 1.0);
  EXPECT_NEAR(r.ci_low, -r.ci_high, 1e-14);
}

TEST(OracleEquivalence, RandomFullRankProblems) {
  oracle::Rng rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t p = static_cast<std::size_t>(rng.integer(2, 8));
    const std::size_t n = static_cast<std::size_t>(rng.integer(static_cast<int>(p) + 2, 50));
    const bool bias = trial % 3 != 0;
    oracle::Mat xm = oracle::random_matrix(rng, n, p);
    if (bias)
      for (auto& r : xm) r[0] = 1.0;
    oracle::Vec y(n);
    for (std::size_t i = 0; i < n; ++i) {
      y[i] = rng.normal(0.0, 2.0);
      for (std::size_t j = 0; j < p; ++j) y[i] += (0.5 + static_cast<double>(j)) * xm[i][j];
    }
    std::vector<std::string> names;
    for (std::size_t j = 0; j < p; ++j) names.push_back("x" + std::to_string(j));
    const FitResult f = fit_ols(to_matrix(xm), y, names, bias ? std::optional<std::size_t>(0) : std::nullopt);
    const auto o = oracle::normal_equations_fit(xm, y, bias);
    for (std::size_t j = 0; j < p; ++j) {
      EXPECT_LT(rel_diff(f.coefficients[j], o.beta[j]), 1e-8);
      EXPECT_LT(rel_diff(f.std_errors[j], o.std_err[j]), 1e-8);
    }
    EXPECT_LT(rel_diff(f.r_squared, o.r2), 1e-8);
    EXPECT_LT(rel_diff(f.adj_r_squared, o.adj_r2), 1e-8);
    EXPECT_LT(rel_diff(f.f_statistic, o.f), 1e-8);
    EXPECT_LT(rel_diff(f.log_likelihood, o.loglik), 1e-8);
    EXPECT_LT(rel_diff(f.aic, o.aic), 1e-8);
    EXPECT_LT(rel_diff(f.bic, o.bic), 1e-8);

    // Consistency chain.
    EXPECT_EQ(f.n_obs, f.df_model + f.df_resid + (f.has_bias ? 1 : 0));
    EXPECT_NEAR(f.aic - f.bic, static_cast<double>(f.k_params) * (2.0 - std::log(static_cast<double>(n))), 1e-9);
    EXPECT_EQ(f.f_p_value, f_sf(f.f_statistic, f.df_model, f.df_resid).value());
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(f.fitted[i] + f.residuals[i], y[i], 1e-10);
    for (std::size_t j = 0; j < p; ++j)
      EXPECT_NEAR(f.t_values[j], f.coefficients[j] / f.std_errors[j], 1e-10);
  }
}

namespace {

std::vector<PlayerRecord> random_records(oracle::Rng& rng, std::size_t n) {
  const char* clubs[] = {"A", "B", "C", "D"};
  const char* feet[] = {"left", "right", "both"};
  std::vector<PlayerRecord> out;
  for (std::size_t i = 0; i < n; ++i) {
    PlayerRecord r;
    r.name = "p";
    r.league = "L";
    r.club = clubs[rng.integer(0, 3)];
    r.age = rng.integer(20, 33);
    r.height_cm = rng.integer(170, 195);
    r.foot = feet[rng.integer(0, 2)];
    r.nationality = "N";
    r.outfitter = "K";
    r.matches_played = rng.integer(16, 30);
    r.goals = rng.integer(0, 25);
    r.assists = rng.integer(0, 10);
    r.yellow_cards = rng.integer(0, 6);
    r.minutes_played = 2000;
    r.market_value_m_eur = rng.uniform(20, 120);
    out.push_back(r);
  }
  return out;
}

}  // namespace

TEST(DummyChoice, FittedValuesInvariant) {
  oracle::Rng rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const auto recs = random_records(rng, 60);
    const FitResult a = fit_ols(encode_dataset(recs, {ReferenceLevel::first}));
    const FitResult b = fit_ols(encode_dataset(recs, {ReferenceLevel::last}));
    for (std::size_t i = 0; i < recs.size(); ++i) EXPECT_NEAR(a.fitted[i], b.fitted[i], 1e-9);
    EXPECT_NEAR(a.r_squared, b.r_squared, 1e-12);
  }
}

TEST(ConfidenceIntervals, CoverageNearNominal) {
  oracle::Rng rng(31337);
  const std::size_t n = 30;
  const oracle::Vec beta = {2.0, -1.0, 0.5};
  oracle::Mat xm = oracle::random_matrix(rng, n, 3);
  for (auto& r : xm) r[0] = 1.0;
  const Matrix x = to_matrix(xm);
  std::array<int, 3> covered{};
  const int reps = 1000;
  for (int rep = 0; rep < reps; ++rep) {
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i)
      y[i] = beta[0] + beta[1] * xm[i][1] + beta[2] * xm[i][2] + rng.normal(0.0, 1.5);
    const FitResult f = fit_ols(x, y, {"const", "a", "b"}, 0);
    for (std::size_t j = 0; j < 3; ++j)
      if (f.ci_low[j] <= beta[j] && beta[j] <= f.ci_high[j]) ++covered[j];
  }
  for (int c : covered) {
    EXPECT_GE(c / static_cast<double>(reps), 0.93);
    EXPECT_LE(c / static_cast<double>(reps), 0.97);
  }
}

TEST(FitResultHelpers, MaxPColumnSkipsDroppedAndBreaksTiesLow) {
  FitResult f;
  f.retained = {true, false, true, true};
  f.p_values = {0.2, std::nan(""), 0.5, 0.5};
  EXPECT_EQ(f.max_p_column(), std::optional<std::size_t>(2));
  EXPECT_EQ(f.retained_columns(), (std::vector<std::size_t>{0, 2, 3}));
}

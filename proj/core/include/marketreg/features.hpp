#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "marketreg/matrix.hpp"

namespace marketreg {

// One forward's season record. Counts are for the season the market value
// refers to.
struct PlayerRecord {
  std::string name;
  std::string league;
  std::string club;
  int age = 0;
  int height_cm = 0;
  std::string foot;  // left, right or both
  std::string nationality;
  std::string outfitter;
  int matches_played = 0;
  int goals = 0;
  int assists = 0;
  int yellow_cards = 0;         // yellows that were not part of a two-yellow dismissal
  int second_yellow_cards = 0;  // matches with two yellows
  int red_cards = 0;
  int minutes_played = 0;
  double market_value_m_eur = 0.0;
  bool mid_season_transfer = false;

  friend bool operator==(const PlayerRecord&, const PlayerRecord&) = default;
};

// Discretizers. Each throws OutOfRange below its domain.
inline constexpr int kAgeGroups = 7;
inline constexpr int kHeightGroups = 7;

int age_group(int age);                // 20-21, 22-23, ..., 30-31, 32+  ->  0..6
int height_group(int height_cm);       // 160-164, ..., 185-189, 190+    ->  0..6
int match_group(int matches_played);   // 0-15 -> 1, then +1 per 5 matches
std::string age_group_label(int group);
std::string height_group_label(int group);

double goal_contribution(int goals, int assists);
int card_score(int yellow_cards, int second_yellow_cards, int red_cards);

enum class ColumnKind { bias, encoded, continuous };

std::string to_string(ColumnKind kind);

struct ColumnMeta {
  std::string name;
  ColumnKind kind = ColumnKind::continuous;
  std::string source_attribute;
  std::optional<std::string> level;

  friend bool operator==(const ColumnMeta&, const ColumnMeta&) = default;
};

struct StandardizationParams {
  std::string column;
  double mean = 0.0;
  double stddev = 0.0;  // sample (n - 1) standard deviation
  bool zero_variance = false;

  friend bool operator==(const StandardizationParams&, const StandardizationParams&) = default;
};

struct EncodedDataset {
  Matrix design;
  std::vector<ColumnMeta> columns;
  Vector response;
  std::vector<StandardizationParams> standardization;

  std::size_t rows() const noexcept { return design.rows(); }
  std::size_t cols() const noexcept { return design.cols(); }
  std::optional<std::size_t> bias_index() const;
  std::vector<std::string> column_names() const;
  // Subset of columns, in the given order; standardization entries follow
  // their columns.
  EncodedDataset select_columns(std::span<const std::size_t> indices) const;
};

// Categorical attributes encoded in this order, each followed by its levels.
inline constexpr std::string_view kCategoricalAttributes[] = {
    "league", "club", "age_group", "height_group",
    "foot", "nationality", "outfitter", "match_group"};
inline constexpr std::string_view kContinuousAttributes[] = {"goal_contribution",
                                                             "card_score"};

enum class ReferenceLevel { first, last };

struct EncodeOptions {
  // Which sorted level of each categorical attribute is dropped.
  ReferenceLevel reference = ReferenceLevel::first;
};

// Builds the design matrix: bias column, one-hot columns (L - 1 per
// attribute, text levels sorted by byte order, discretized levels by group
// number), then standardized goal contribution and card score. The response
// is the raw market value. Requires at least two records.
EncodedDataset encode_dataset(std::span<const PlayerRecord> records,
                              const EncodeOptions& options = {});

}  // namespace marketreg

#include "marketreg/features.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "marketreg/errors.hpp"

namespace marketreg {

int age_group(int age) {
  if (age < 20) throw OutOfRange("age_group: age " + std::to_string(age) + " is below 20");
  return std::min((age - 20) / 2, kAgeGroups - 1);
}

int height_group(int height_cm) {
  if (height_cm < 160)
    throw OutOfRange("height_group: height " + std::to_string(height_cm) + " is below 160 cm");
  return std::min((height_cm - 160) / 5, kHeightGroups - 1);
}

int match_group(int matches_played) {
  if (matches_played < 0) throw OutOfRange("match_group: negative match count");
  if (matches_played <= 15) return 1;
  return 1 + (matches_played - 11) / 5;
}

std::string age_group_label(int group) {
  if (group < 0 || group >= kAgeGroups) throw OutOfRange("age_group_label: bad group");
  if (group == kAgeGroups - 1) return "32+";
  const int lo = 20 + 2 * group;
  return std::to_string(lo) + "-" + std::to_string(lo + 1);
}

std::string height_group_label(int group) {
  if (group < 0 || group >= kHeightGroups) throw OutOfRange("height_group_label: bad group");
  if (group == kHeightGroups - 1) return "190+";
  const int lo = 160 + 5 * group;
  return std::to_string(lo) + "-" + std::to_string(lo + 4);
}

double goal_contribution(int goals, int assists) {
  if (goals < 0 || assists < 0) throw OutOfRange("goal_contribution: negative count");
  return goals + 0.5 * assists;
}

int card_score(int yellow_cards, int second_yellow_cards, int red_cards) {
  if (yellow_cards < 0 || second_yellow_cards < 0 || red_cards < 0)
    throw OutOfRange("card_score: negative count");
  return yellow_cards + 2 * second_yellow_cards + 3 * red_cards;
}

std::string to_string(ColumnKind kind) {
  switch (kind) {
    case ColumnKind::bias: return "bias";
    case ColumnKind::encoded: return "encoded";
    case ColumnKind::continuous: return "continuous";
  }
  return "unknown";
}

std::optional<std::size_t> EncodedDataset::bias_index() const {
  for (std::size_t j = 0; j < columns.size(); ++j)
    if (columns[j].kind == ColumnKind::bias) return j;
  return std::nullopt;
}

std::vector<std::string> EncodedDataset::column_names() const {
  std::vector<std::string> out;
  out.reserve(columns.size());
  for (const auto& c : columns) out.push_back(c.name);
  return out;
}

EncodedDataset EncodedDataset::select_columns(std::span<const std::size_t> indices) const {
  EncodedDataset out;
  out.design = design.select_columns(indices);
  out.response = response;
  for (std::size_t j : indices) {
    out.columns.push_back(columns.at(j));
    for (const auto& s : standardization)
      if (s.column == columns[j].name) out.standardization.push_back(s);
  }
  return out;
}

namespace {

// A level with its sort key; discretized attributes sort numerically.
struct Level {
  long key_number = 0;
  std::string label;
  bool operator<(const Level& o) const {
    if (key_number != o.key_number) return key_number < o.key_number;
    return label < o.label;
  }
};

Level categorical_level(const PlayerRecord& r, std::string_view attribute) {
  if (attribute == "league") return {0, r.league};
  if (attribute == "club") return {0, r.club};
  if (attribute == "age_group") {
    const int g = age_group(r.age);
    return {g, age_group_label(g)};
  }
  if (attribute == "height_group") {
    const int g = height_group(r.height_cm);
    return {g, height_group_label(g)};
  }
  if (attribute == "foot") return {0, r.foot};
  if (attribute == "nationality") return {0, r.nationality};
  if (attribute == "outfitter") return {0, r.outfitter};
  if (attribute == "match_group") {
    const int g = match_group(r.matches_played);
    return {g, std::to_string(g)};
  }
  throw InvalidInput("unknown categorical attribute");
}

double continuous_value(const PlayerRecord& r, std::string_view attribute) {
  if (attribute == "goal_contribution") return goal_contribution(r.goals, r.assists);
  if (attribute == "card_score")
    return card_score(r.yellow_cards, r.second_yellow_cards, r.red_cards);
  throw InvalidInput("unknown continuous attribute");
}

}  // namespace

EncodedDataset encode_dataset(std::span<const PlayerRecord> records,
                              const EncodeOptions& options) {
  const std::size_t n = records.size();
  if (n < 2) throw InvalidInput("encode_dataset: at least two records are required");

  std::vector<Vector> cols;
  EncodedDataset out;

  cols.emplace_back(n, 1.0);
  out.columns.push_back({"const", ColumnKind::bias, "bias", std::nullopt});

  for (std::string_view attribute : kCategoricalAttributes) {
    std::vector<Level> row_levels;
    row_levels.reserve(n);
    for (const auto& r : records) row_levels.push_back(categorical_level(r, attribute));

    std::vector<Level> levels = row_levels;
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end(),
                             [](const Level& a, const Level& b) {
                               return a.key_number == b.key_number && a.label == b.label;
                             }),
                 levels.end());
    if (levels.empty()) continue;
    if (options.reference == ReferenceLevel::first) {
      levels.erase(levels.begin());
    } else {
      levels.pop_back();
    }

    for (const Level& level : levels) {
      Vector c(n, 0.0);
      for (std::size_t i = 0; i < n; ++i)
        if (row_levels[i].key_number == level.key_number && row_levels[i].label == level.label)
          c[i] = 1.0;
      cols.push_back(std::move(c));
      out.columns.push_back({std::string(attribute) + "[" + level.label + "]",
                             ColumnKind::encoded, std::string(attribute), level.label});
    }
  }

  for (std::string_view attribute : kContinuousAttributes) {
    Vector c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = continuous_value(records[i], attribute);

    double mean = 0.0;
    for (double v : c) mean += v;
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double v : c) ss += (v - mean) * (v - mean);
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));

    StandardizationParams params{std::string(attribute), mean, sd, false};
    if (sd <= 1e-12 * std::max(1.0, std::fabs(mean))) {
      params.zero_variance = true;
      std::fill(c.begin(), c.end(), 0.0);
    } else {
      for (double& v : c) v = (v - mean) / sd;
    }
    out.standardization.push_back(params);
    cols.push_back(std::move(c));
    out.columns.push_back(
        {std::string(attribute), ColumnKind::continuous, std::string(attribute), std::nullopt});
  }

  out.design = Matrix::from_columns(cols);
  out.response.reserve(n);
  for (const auto& r : records) out.response.push_back(r.market_value_m_eur);
  return out;
}

}  // namespace marketreg

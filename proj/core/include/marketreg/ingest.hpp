#pragma once

#include <cstddef>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "marketreg/features.hpp"

namespace marketreg {

// Exact header of the player CSV, in order.
inline constexpr std::string_view kPlayerCsvColumns[] = {
    "name",          "league",         "club",
    "age",           "height_cm",      "foot",
    "nationality",   "outfitter",      "matches_played",
    "goals",         "assists",        "yellow_cards",
    "second_yellow_cards", "red_cards", "minutes_played",
    "market_value_m_eur",  "mid_season_transfer"};

std::string player_csv_header();

// Parses the player CSV. An empty stream yields an empty list. Throws
// SchemaError for a header mismatch and ParseError (1-based row including the
// header, column name) for malformed cells.
std::vector<PlayerRecord> parse_players_csv(std::istream& in);
std::vector<PlayerRecord> parse_players_csv(std::string_view text);

// Serializes records with the exact header; doubles use the shortest
// round-trip representation.
void write_players_csv(std::ostream& out, std::span<const PlayerRecord> records);

struct FilterConfig {
  int min_age = 20;
  int max_age = 34;
  int min_minutes = 1000;
  double min_market_value_m_eur = 20.0;
  bool exclude_mid_season_transfers = true;

  // Throws InvalidInput when the invariants do not hold.
  void validate() const;
};

// Rules are evaluated in this order; the first failure is logged.
enum class FilterRule { age, mid_season_transfer, market_value, minutes_played };

std::string to_string(FilterRule rule);

struct Exclusion {
  std::string name;
  FilterRule rule;
};

using ExclusionLog = std::vector<Exclusion>;

struct FilterResult {
  std::vector<PlayerRecord> accepted;
  ExclusionLog log;
};

// Thresholds are inclusive: a player with exactly min_minutes or exactly the
// minimum market value is kept.
FilterResult apply_filters(std::span<const PlayerRecord> records, const FilterConfig& cfg = {});

}  // namespace marketreg

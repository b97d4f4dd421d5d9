#include <sstream>

#include <gtest/gtest.h>

#include "marketreg/errors.hpp"
#include "marketreg/ingest.hpp"
#include "oracles.hpp"

using namespace marketreg;

namespace {

const std::string kRow =
    "Erling,Premier League,Man City,23,195,left,Norway,Nike,31,27,5,4,0,1,2560,180,0";

PlayerRecord eligible(std::string name = "p") {
  PlayerRecord r;
  r.name = std::move(name);
  r.league = "L";
  r.club = "C";
  r.age = 25;
  r.height_cm = 180;
  r.foot = "right";
  r.nationality = "N";
  r.outfitter = "K";
  r.matches_played = 30;
  r.minutes_played = 2000;
  r.market_value_m_eur = 40.0;
  return r;
}

}  // namespace

TEST(ParseCsv, EmptyAndHeaderOnly) {
  EXPECT_TRUE(parse_players_csv(std::string_view("")).empty());
  EXPECT_TRUE(parse_players_csv(player_csv_header() + "\n").empty());
  EXPECT_TRUE(parse_players_csv(player_csv_header()).empty());
}

TEST(ParseCsv, SingleRowFields) {
  const auto recs = parse_players_csv(player_csv_header() + "\n" + kRow + "\n");
  ASSERT_EQ(recs.size(), 1u);
  const auto& r = recs[0];
  EXPECT_EQ(r.name, "Erling");
  EXPECT_EQ(r.league, "Premier League");
  EXPECT_EQ(r.club, "Man City");
  EXPECT_EQ(r.age, 23);
  EXPECT_EQ(r.height_cm, 195);
  EXPECT_EQ(r.foot, "left");
  EXPECT_EQ(r.matches_played, 31);
  EXPECT_EQ(r.goals, 27);
  EXPECT_EQ(r.assists, 5);
  EXPECT_EQ(r.yellow_cards, 4);
  EXPECT_EQ(r.second_yellow_cards, 0);
  EXPECT_EQ(r.red_cards, 1);
  EXPECT_EQ(r.minutes_played, 2560);
  EXPECT_EQ(r.market_value_m_eur, 180.0);
  EXPECT_FALSE(r.mid_season_transfer);
}

TEST(ParseCsv, RoundTripIsFieldExact) {
  oracle::Rng rng(3);
  std::vector<PlayerRecord> recs;
  for (int i = 0; i < 50; ++i) {
    PlayerRecord r = eligible("Player, \"Jr\" " + std::to_string(i));
    r.club = i % 2 ? "Club \"A\"" : "Club,B";
    r.market_value_m_eur = rng.uniform(20.0, 200.0);
    r.mid_season_transfer = i % 7 == 0;
    r.goals = rng.integer(0, 40);
    recs.push_back(r);
  }
  std::ostringstream out;
  write_players_csv(out, recs);
  EXPECT_EQ(parse_players_csv(std::string_view(out.str())), recs);
}

TEST(ParseCsv, CategoryFieldsTrimmedAndCasePreserved) {
  const auto recs = parse_players_csv(
      player_csv_header() + "\nA, Serie A ,  Inter ,25,180, Right ,Italy,Nike,30,1,1,0,0,0,1500,30.5,1\n");
  ASSERT_EQ(recs.size(), 1u);
  EXPECT_EQ(recs[0].league, "Serie A");
  EXPECT_EQ(recs[0].club, "Inter");
  EXPECT_EQ(recs[0].foot, "Right");
  EXPECT_TRUE(recs[0].mid_season_transfer);
}

TEST(ParseCsv, MalformedAgeCitesRowAndColumn) {
  std::string bad = kRow;
  bad.replace(bad.find(",23,"), 4, ",twenty,");
  try {
    parse_players_csv(player_csv_header() + "\n" + bad + "\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.row(), 2u);
    EXPECT_EQ(e.column(), "age");
  }
}

TEST(ParseCsv, StrictNumbers) {
  for (const char* cell : {"23.0", "23x", " ", "1e2", "-3"}) {
    std::string bad = kRow;
    bad.replace(bad.find(",31,"), 4, std::string(",") + cell + ",");
    EXPECT_THROW(parse_players_csv(player_csv_header() + "\n" + bad), ParseError) << cell;
  }
  std::string bad_value = kRow;
  bad_value.replace(bad_value.rfind(",180,"), 5, ",1,80,");
  EXPECT_THROW(parse_players_csv(player_csv_header() + "\n" + bad_value), ParseError);
  std::string bad_flag = kRow;
  bad_flag.back() = '2';
  EXPECT_THROW(parse_players_csv(player_csv_header() + "\n" + bad_flag), ParseError);
}

TEST(ParseCsv, RangeChecks) {
  std::string short_player = kRow;
  short_player.replace(short_player.find(",195,"), 5, ",120,");
  EXPECT_THROW(parse_players_csv(player_csv_header() + "\n" + short_player), ParseError);
  std::string zero_value = kRow;
  zero_value.replace(zero_value.rfind(",180,"), 5, ",0,");
  EXPECT_THROW(parse_players_csv(player_csv_header() + "\n" + zero_value), ParseError);
}

TEST(ParseCsv, WrongFieldCountReportsRow) {
  try {
    parse_players_csv(player_csv_header() + "\n" + kRow + "\n" + kRow + ",extra\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.row(), 3u);
  }
}

TEST(ParseCsv, SchemaErrorsNameTheColumn) {
  std::string header = player_csv_header();
  const std::string missing = header.substr(0, header.rfind(','));
  try {
    parse_players_csv(missing + "\n");
    FAIL();
  } catch (const SchemaError& e) {
    EXPECT_EQ(e.column(), "mid_season_transfer");
  }
  try {
    parse_players_csv(header + ",shirt\n");
    FAIL();
  } catch (const SchemaError& e) {
    EXPECT_EQ(e.column(), "shirt");
  }
  std::string renamed = header;
  renamed.replace(renamed.find("goals"), 5, "golas");
  try {
    parse_players_csv(renamed + "\n");
    FAIL();
  } catch (const SchemaError& e) {
    // A renamed column is reported as the expected one that is missing.
    EXPECT_EQ(e.column(), "goals");
  }
}

TEST(ParseCsv, AcceptsBomAndCrlf) {
  const auto recs = parse_players_csv("\xEF\xBB\xBF" + player_csv_header() + "\r\n" + kRow + "\r\n");
  ASSERT_EQ(recs.size(), 1u);
  EXPECT_FALSE(recs[0].mid_season_transfer);
}

TEST(Filters, MinutesThresholdIsInclusive) {
  auto a = eligible("a");
  a.minutes_played = 999;
  auto b = eligible("b");
  b.minutes_played = 1000;
  const std::vector<PlayerRecord> recs = {a, b};
  const auto res = apply_filters(recs);
  ASSERT_EQ(res.accepted.size(), 1u);
  EXPECT_EQ(res.accepted[0].name, "b");
  ASSERT_EQ(res.log.size(), 1u);
  EXPECT_EQ(res.log[0].name, "a");
  EXPECT_EQ(res.log[0].rule, FilterRule::minutes_played);
}

TEST(Filters, ValueThresholdIsInclusive) {
  auto a = eligible("a");
  a.market_value_m_eur = 19.9;
  auto b = eligible("b");
  b.market_value_m_eur = 20.0;
  const std::vector<PlayerRecord> recs = {a, b};
  const auto res = apply_filters(recs);
  ASSERT_EQ(res.accepted.size(), 1u);
  EXPECT_EQ(res.accepted[0].name, "b");
  EXPECT_EQ(res.log[0].rule, FilterRule::market_value);
}

TEST(Filters, MidSeasonTransferExcludedByDefault) {
  auto a = eligible("a");
  a.mid_season_transfer = true;
  const std::vector<PlayerRecord> recs = {a};
  const auto res = apply_filters(recs);
  EXPECT_TRUE(res.accepted.empty());
  EXPECT_EQ(res.log[0].rule, FilterRule::mid_season_transfer);
  FilterConfig keep;
  keep.exclude_mid_season_transfers = false;
  EXPECT_EQ(apply_filters(recs, keep).accepted.size(), 1u);
}

TEST(Filters, AgeBoundsAndRuleOrder) {
  auto young = eligible("y");
  young.age = 19;
  young.minutes_played = 10;
  young.mid_season_transfer = true;
  auto old = eligible("o");
  old.age = 35;
  auto edge_low = eligible("l");
  edge_low.age = 20;
  auto edge_high = eligible("h");
  edge_high.age = 34;
  auto cheap_short = eligible("c");
  cheap_short.market_value_m_eur = 5;
  cheap_short.minutes_played = 10;
  const std::vector<PlayerRecord> recs = {young, old, edge_low, edge_high, cheap_short};
  const auto res = apply_filters(recs);
  EXPECT_EQ(res.accepted.size(), 2u);
  ASSERT_EQ(res.log.size(), 3u);
  EXPECT_EQ(res.log[0].rule, FilterRule::age);
  EXPECT_EQ(res.log[1].rule, FilterRule::age);
  EXPECT_EQ(res.log[2].rule, FilterRule::market_value);
  EXPECT_EQ(to_string(FilterRule::minutes_played), "minutes_played");
}

TEST(Filters, ConfigValidation) {
  FilterConfig c;
  EXPECT_NO_THROW(c.validate());
  c.min_age = 40;
  EXPECT_THROW(c.validate(), InvalidInput);
  FilterConfig d;
  d.min_minutes = -1;
  EXPECT_THROW(d.validate(), InvalidInput);
  FilterConfig e;
  e.min_market_value_m_eur = -1;
  EXPECT_THROW(e.validate(), InvalidInput);
}

namespace {

std::vector<PlayerRecord> random_players(oracle::Rng& rng, int n) {
  std::vector<PlayerRecord> out;
  for (int i = 0; i < n; ++i) {
    auto r = eligible("p" + std::to_string(i));
    r.age = rng.integer(16, 38);
    r.minutes_played = rng.integer(0, 3500);
    r.market_value_m_eur = rng.uniform(1, 100);
    r.mid_season_transfer = rng.uniform() < 0.1;
    out.push_back(r);
  }
  return out;
}

}  // namespace

TEST(FilterProperties, PartitionIdempotenceMonotonicity) {
  oracle::Rng rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    const auto recs = random_players(rng, rng.integer(0, 60));
    FilterConfig cfg;
    cfg.min_age = rng.integer(18, 24);
    cfg.max_age = rng.integer(28, 36);
    cfg.min_minutes = rng.integer(0, 2000);
    cfg.min_market_value_m_eur = rng.uniform(0, 50);
    const auto res = apply_filters(recs, cfg);
    EXPECT_EQ(res.accepted.size() + res.log.size(), recs.size());

    const auto again = apply_filters(res.accepted, cfg);
    EXPECT_EQ(again.accepted, res.accepted);
    EXPECT_TRUE(again.log.empty());

    FilterConfig loose = cfg;
    switch (trial % 5) {
      case 0: loose.min_age -= 2; break;
      case 1: loose.max_age += 2; break;
      case 2: loose.min_minutes = std::max(0, loose.min_minutes - 500); break;
      case 3: loose.min_market_value_m_eur /= 2; break;
      default: loose.exclude_mid_season_transfers = false; break;
    }
    const auto wider = apply_filters(recs, loose);
    EXPECT_GE(wider.accepted.size(), res.accepted.size());
    for (const auto& r : res.accepted)
      EXPECT_NE(std::find(wider.accepted.begin(), wider.accepted.end(), r), wider.accepted.end());
  }
}

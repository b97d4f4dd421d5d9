#include "marketreg/ingest.hpp"

#include <charconv>
#include <cmath>
#include <iterator>
#include <sstream>

#include "marketreg/errors.hpp"

namespace marketreg {
namespace {

constexpr std::size_t kColumnCount = std::size(kPlayerCsvColumns);

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

// Splits one logical CSV record (RFC 4180 quoting). Returns false at end of
// input. Quoted fields may span lines.
bool read_record(std::istream& in, std::vector<std::string>& fields, std::size_t row) {
  fields.clear();
  std::string field;
  bool in_quotes = false;
  bool any = false;
  char ch;
  while (in.get(ch)) {
    any = true;
    if (in_quotes) {
      if (ch == '"') {
        if (in.peek() == '"') {
          in.get(ch);
          field.push_back('"');
        } else {
          in_quotes = false;
        }
      } else {
        field.push_back(ch);
      }
      continue;
    }
    if (ch == '"') {
      in_quotes = true;
    } else if (ch == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else if (ch == '\n') {
      fields.push_back(std::move(field));
      return true;
    } else if (ch != '\r') {
      field.push_back(ch);
    }
  }
  if (in_quotes) throw ParseError(row, "", "unterminated quoted field in row " + std::to_string(row));
  if (!any) return false;
  fields.push_back(std::move(field));
  return true;
}

bool blank(const std::vector<std::string>& fields) {
  return fields.size() == 1 && trim(fields[0]).empty();
}

int parse_int(std::string_view cell, std::size_t row, std::string_view column) {
  const std::string_view t = trim(cell);
  int value = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    throw ParseError(row, std::string(column),
                     "row " + std::to_string(row) + ", column \"" + std::string(column) +
                         "\": expected an integer, got \"" + std::string(t) + "\"");
  }
  return value;
}

double parse_real(std::string_view cell, std::size_t row, std::string_view column) {
  const std::string_view t = trim(cell);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(value)) {
    throw ParseError(row, std::string(column),
                     "row " + std::to_string(row) + ", column \"" + std::string(column) +
                         "\": expected a number, got \"" + std::string(t) + "\"");
  }
  return value;
}

void require(bool ok, std::size_t row, std::string_view column, const std::string& what) {
  if (!ok)
    throw ParseError(row, std::string(column),
                     "row " + std::to_string(row) + ", column \"" + std::string(column) +
                         "\": " + what);
}

PlayerRecord parse_row(const std::vector<std::string>& f, std::size_t row) {
  auto count = [&](std::size_t idx) {
    const int v = parse_int(f[idx], row, kPlayerCsvColumns[idx]);
    require(v >= 0, row, kPlayerCsvColumns[idx], "count must be non-negative");
    return v;
  };
  PlayerRecord r;
  r.name = std::string(trim(f[0]));
  r.league = std::string(trim(f[1]));
  r.club = std::string(trim(f[2]));
  r.age = parse_int(f[3], row, "age");
  require(r.age >= 15, row, "age", "age must be at least 15");
  r.height_cm = parse_int(f[4], row, "height_cm");
  require(r.height_cm >= 140 && r.height_cm <= 220, row, "height_cm",
          "height must lie in [140, 220]");
  r.foot = std::string(trim(f[5]));
  r.nationality = std::string(trim(f[6]));
  r.outfitter = std::string(trim(f[7]));
  r.matches_played = count(8);
  r.goals = count(9);
  r.assists = count(10);
  r.yellow_cards = count(11);
  r.second_yellow_cards = count(12);
  r.red_cards = count(13);
  r.minutes_played = count(14);
  r.market_value_m_eur = parse_real(f[15], row, "market_value_m_eur");
  require(r.market_value_m_eur > 0.0, row, "market_value_m_eur", "market value must be positive");
  const int flag = parse_int(f[16], row, "mid_season_transfer");
  require(flag == 0 || flag == 1, row, "mid_season_transfer", "expected 0 or 1");
  r.mid_season_transfer = flag == 1;

  for (std::size_t idx : {std::size_t{1}, std::size_t{2}, std::size_t{5}, std::size_t{6},
                          std::size_t{7}})
    require(!trim(f[idx]).empty(), row, kPlayerCsvColumns[idx], "category is empty");
  return r;
}

void check_header(const std::vector<std::string>& header) {
  for (std::size_t i = 0; i < kColumnCount; ++i) {
    const std::string_view expected = kPlayerCsvColumns[i];
    if (i >= header.size()) {
      throw SchemaError(std::string(expected),
                        "missing column \"" + std::string(expected) + "\" in CSV header");
    }
    std::string_view got = trim(header[i]);
    if (i == 0 && got.starts_with("\xEF\xBB\xBF")) got.remove_prefix(3);
    if (got != expected) {
      bool present = false;
      for (const auto& h : header) present = present || trim(h) == expected;
      if (!present)
        throw SchemaError(std::string(expected),
                          "missing column \"" + std::string(expected) + "\" in CSV header");
      throw SchemaError(std::string(got), "unexpected column \"" + std::string(got) +
                                              "\" at position " + std::to_string(i + 1) +
                                              ", expected \"" + std::string(expected) + "\"");
    }
  }
  if (header.size() > kColumnCount) {
    const std::string extra(trim(header[kColumnCount]));
    throw SchemaError(extra, "unexpected extra column \"" + extra + "\" in CSV header");
  }
}

std::string format_real(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string quote_if_needed(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace

std::string player_csv_header() {
  std::string out;
  for (std::size_t i = 0; i < kColumnCount; ++i) {
    if (i) out.push_back(',');
    out.append(kPlayerCsvColumns[i]);
  }
  return out;
}

std::vector<PlayerRecord> parse_players_csv(std::istream& in) {
  std::vector<PlayerRecord> records;
  std::vector<std::string> fields;
  std::size_t row = 1;
  if (!read_record(in, fields, row)) return records;
  check_header(fields);

  while (read_record(in, fields, ++row)) {
    if (blank(fields)) continue;
    if (fields.size() != kColumnCount) {
      throw ParseError(row, "", "row " + std::to_string(row) + ": expected " +
                                    std::to_string(kColumnCount) + " fields, got " +
                                    std::to_string(fields.size()));
    }
    records.push_back(parse_row(fields, row));
  }
  return records;
}

std::vector<PlayerRecord> parse_players_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_players_csv(in);
}

void write_players_csv(std::ostream& out, std::span<const PlayerRecord> records) {
  out << player_csv_header() << '\n';
  for (const auto& r : records) {
    out << quote_if_needed(r.name) << ',' << quote_if_needed(r.league) << ','
        << quote_if_needed(r.club) << ',' << r.age << ',' << r.height_cm << ','
        << quote_if_needed(r.foot) << ',' << quote_if_needed(r.nationality) << ','
        << quote_if_needed(r.outfitter) << ',' << r.matches_played << ',' << r.goals << ','
        << r.assists << ',' << r.yellow_cards << ',' << r.second_yellow_cards << ','
        << r.red_cards << ',' << r.minutes_played << ',' << format_real(r.market_value_m_eur)
        << ',' << (r.mid_season_transfer ? 1 : 0) << '\n';
  }
}

void FilterConfig::validate() const {
  if (min_age > max_age) throw InvalidInput("filter: min_age exceeds max_age");
  if (min_minutes < 0) throw InvalidInput("filter: min_minutes is negative");
  if (!(min_market_value_m_eur >= 0.0)) throw InvalidInput("filter: min market value is negative");
}

std::string to_string(FilterRule rule) {
  switch (rule) {
    case FilterRule::age: return "age";
    case FilterRule::mid_season_transfer: return "mid_season_transfer";
    case FilterRule::market_value: return "market_value";
    case FilterRule::minutes_played: return "minutes_played";
  }
  return "unknown";
}

FilterResult apply_filters(std::span<const PlayerRecord> records, const FilterConfig& cfg) {
  cfg.validate();
  FilterResult out;
  for (const auto& r : records) {
    if (r.age < cfg.min_age || r.age > cfg.max_age) {
      out.log.push_back({r.name, FilterRule::age});
    } else if (cfg.exclude_mid_season_transfers && r.mid_season_transfer) {
      out.log.push_back({r.name, FilterRule::mid_season_transfer});
    } else if (r.market_value_m_eur < cfg.min_market_value_m_eur) {
      out.log.push_back({r.name, FilterRule::market_value});
    } else if (r.minutes_played < cfg.min_minutes) {
      out.log.push_back({r.name, FilterRule::minutes_played});
    } else {
      out.accepted.push_back(r);
    }
  }
  return out;
}

}  // namespace marketreg

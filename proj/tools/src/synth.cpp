#include "marketreg/cli/synth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <string_view>

#include "marketreg/errors.hpp"
#include "marketreg/qr.hpp"

namespace marketreg::cli {
namespace {

struct League {
  std::string_view name;
  std::array<std::string_view, 10> clubs;
};

constexpr std::array<League, 4> kLeagues = {{
    {"Bundesliga",
     {"Bayern Munich", "Borussia Dortmund", "RB Leipzig", "Bayer Leverkusen", "Schalke 04",
      "Eintracht Frankfurt", "Borussia Monchengladbach", "Hoffenheim", "Wolfsburg",
      "Hertha Berlin"}},
    {"La Liga",
     {"Barcelona", "Real Madrid", "Atletico Madrid", "Valencia", "Sevilla", "Villarreal",
      "Real Sociedad", "Athletic Bilbao", "Celta Vigo", "Real Betis"}},
    {"Premier League",
     {"Manchester City", "Manchester United", "Liverpool", "Chelsea", "Tottenham Hotspur",
      "Arsenal", "Leicester City", "Everton", "West Ham United", "Southampton"}},
    {"Serie A",
     {"Juventus", "Napoli", "AS Roma", "Inter Milan", "AC Milan", "Lazio", "Atalanta",
      "Fiorentina", "Torino", "Sampdoria"}},
}};

// Per-club effect, aligned with kLeagues; rank within a league drives it.
constexpr std::array<double, 10> kClubEffectByRank = {30, 26, 18, 12, 8, 5, 3, 0, -2, -4};
constexpr std::array<double, 10> kClubWeightByRank = {10, 9, 8, 7, 6, 5, 4, 3, 2, 2};

constexpr std::array<std::string_view, 28> kNationalities = {
    "France",    "Spain",       "Brazil",   "Argentina",   "England",  "Germany",
    "Italy",     "Belgium",     "Portugal", "Netherlands", "Uruguay",  "Colombia",
    "Croatia",   "Poland",      "Senegal",  "Egypt",       "Gabon",    "Wales",
    "Sweden",    "Switzerland", "Denmark",  "Serbia",      "Chile",    "Mexico",
    "Nigeria",   "Ivory Coast", "Austria",  "South Korea"};
constexpr std::array<double, 28> kNationalityEffect = {
    6, 4, 5, 5, 9, 3, 2, 3, 4, 2, 3, 1, 2, 0, 1, 2, 0, 1, 0, -4, 0, -1, 0, -2, 0, 1, -1, 2};

constexpr std::array<std::string_view, 5> kOutfitters = {"Adidas", "Nike", "Puma",
                                                         "New Balance", "Under Armour"};
constexpr std::array<double, 5> kOutfitterWeight = {40, 45, 9, 4, 2};

constexpr std::array<std::string_view, 3> kFeet = {"both", "left", "right"};
constexpr std::array<double, 3> kFootWeight = {8, 30, 62};
constexpr std::array<double, 3> kFootEffect = {3, 0, 2};

constexpr std::array<double, kAgeGroups> kAgeEffect = {15, 12, 8, 5, 0, -6, -10};
constexpr std::array<double, kHeightGroups> kHeightEffect = {-4, -2, -3, 0, 4, 1, -1};

constexpr double kIntercept = 60.0;
constexpr double kGoalSlope = 2.0;
constexpr double kCardSlope = 0.0;
constexpr double kNoiseSd = 4.0;
constexpr int kMaxMatchGroup = 8;

// Portable variates on top of mt19937_64 (the standard distributions are
// implementation-defined).
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  int uniform_int(int lo, int hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<int>(engine_() % span);
  }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * std::numbers::pi * u2);
    has_spare_ = true;
    return r * std::cos(2.0 * std::numbers::pi * u2);
  }

  int poisson(double mean) {
    // Inversion; means here stay well below 30.
    const double limit = std::exp(-mean);
    double prod = uniform();
    int k = 0;
    while (prod > limit) {
      prod *= uniform();
      ++k;
    }
    return k;
  }

  template <std::size_t N>
  std::size_t weighted(const std::array<double, N>& weights) {
    double total = 0.0;
    for (double w : weights) total += w;
    double u = uniform() * total;
    for (std::size_t i = 0; i < N; ++i) {
      if (u < weights[i]) return i;
      u -= weights[i];
    }
    return N - 1;
  }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

std::array<double, 28> nationality_weights() {
  std::array<double, 28> w{};
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = 1.0 / static_cast<double>(i + 1);
  return w;
}

SynthTruth make_truth(std::uint64_t seed, std::size_t n) {
  SynthTruth t;
  t.seed = seed;
  t.n = n;
  t.intercept = kIntercept;
  t.goal_slope = kGoalSlope;
  t.card_slope = kCardSlope;
  t.noise_sd = kNoiseSd;

  auto& league = t.level_effects["league"];
  auto& club = t.level_effects["club"];
  for (const auto& l : kLeagues) {
    league[std::string(l.name)] = l.name == "Premier League" ? 4.0 : l.name == "La Liga" ? 2.0 : 0.0;
    for (std::size_t r = 0; r < l.clubs.size(); ++r)
      club[std::string(l.clubs[r])] = kClubEffectByRank[r];
  }
  for (int g = 0; g < kAgeGroups; ++g)
    t.level_effects["age_group"][age_group_label(g)] = kAgeEffect[static_cast<std::size_t>(g)];
  for (int g = 0; g < kHeightGroups; ++g)
    t.level_effects["height_group"][height_group_label(g)] =
        kHeightEffect[static_cast<std::size_t>(g)];
  for (std::size_t i = 0; i < kFeet.size(); ++i)
    t.level_effects["foot"][std::string(kFeet[i])] = kFootEffect[i];
  for (std::size_t i = 0; i < kNationalities.size(); ++i)
    t.level_effects["nationality"][std::string(kNationalities[i])] = kNationalityEffect[i];
  for (std::size_t i = 0; i < kOutfitters.size(); ++i)
    t.level_effects["outfitter"][std::string(kOutfitters[i])] = 0.0;
  for (int g = 1; g <= kMaxMatchGroup; ++g)
    t.level_effects["match_group"][std::to_string(g)] = 2.0 * (g - 1);
  return t;
}

double effect(const SynthTruth& t, const std::string& attribute, const std::string& level) {
  const auto a = t.level_effects.find(attribute);
  if (a == t.level_effects.end()) return 0.0;
  const auto l = a->second.find(level);
  return l == a->second.end() ? 0.0 : l->second;
}

}  // namespace

double SynthTruth::expected_value(const PlayerRecord& r) const {
  double v = intercept;
  v += effect(*this, "league", r.league);
  v += effect(*this, "club", r.club);
  // Ages below the encoder's range only occur in rows the default filter drops.
  if (r.age >= 20) v += effect(*this, "age_group", age_group_label(age_group(r.age)));
  v += effect(*this, "height_group", height_group_label(height_group(r.height_cm)));
  v += effect(*this, "foot", r.foot);
  v += effect(*this, "nationality", r.nationality);
  v += effect(*this, "outfitter", r.outfitter);
  v += effect(*this, "match_group", std::to_string(match_group(r.matches_played)));
  v += goal_slope * goal_contribution(r.goals, r.assists);
  v += card_slope * card_score(r.yellow_cards, r.second_yellow_cards, r.red_cards);
  return v;
}

SynthOutput generate_synthetic(std::uint64_t seed, std::size_t n) {
  if (n < kMinSynthRows)
    throw InvalidInput("generate_synthetic: n must be at least " + std::to_string(kMinSynthRows));

  SynthOutput out;
  out.truth = make_truth(seed, n);
  Sampler rng(seed);
  const auto nat_weights = nationality_weights();

  out.records.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    PlayerRecord r;
    char name[32];
    std::snprintf(name, sizeof name, "Player %03zu", i + 1);
    r.name = name;

    const auto& league = kLeagues[static_cast<std::size_t>(rng.uniform_int(0, 3))];
    r.league = std::string(league.name);
    r.club = std::string(league.clubs[rng.weighted(kClubWeightByRank)]);

    // About 1% fall outside the default 20-34 age window.
    const double age_u = rng.uniform();
    if (age_u < 0.005) {
      r.age = 19;
    } else if (age_u < 0.01) {
      r.age = 35;
    } else {
      r.age = rng.uniform_int(20, 34);
    }
    r.height_cm = static_cast<int>(std::lround(182.0 + 6.5 * rng.normal()));
    r.height_cm = std::clamp(r.height_cm, 163, 203);
    r.foot = std::string(kFeet[rng.weighted(kFootWeight)]);
    r.nationality = std::string(kNationalities[rng.weighted(nat_weights)]);
    r.outfitter = std::string(kOutfitters[rng.weighted(kOutfitterWeight)]);

    r.matches_played = rng.uniform_int(17, 46);
    const double minutes_per_match = 60.0 + 30.0 * rng.uniform();
    r.minutes_played = static_cast<int>(std::lround(r.matches_played * minutes_per_match));
    const double goal_rate = 0.1 + 0.5 * rng.uniform();
    const double assist_rate = 0.05 + 0.25 * rng.uniform();
    r.goals = rng.poisson(r.matches_played * goal_rate);
    r.assists = rng.poisson(r.matches_played * assist_rate);
    r.yellow_cards = rng.poisson(r.matches_played * 0.08);
    r.second_yellow_cards = rng.poisson(0.1);
    r.red_cards = rng.poisson(0.05);
    r.mid_season_transfer = rng.uniform() < 0.01;

    const double value = out.truth.expected_value(r) + kNoiseSd * rng.normal();
    // Three decimals, as a published market value would carry at most.
    r.market_value_m_eur = std::round(std::max(value, 0.5) * 1000.0) / 1000.0;
    out.records.push_back(std::move(r));
  }
  return out;
}

nlohmann::ordered_json truth_to_json(const SynthOutput& output) {
  const SynthTruth& t = output.truth;
  nlohmann::ordered_json j;
  j["seed"] = t.seed;
  j["n"] = t.n;
  j["model"] =
      "market_value_m_eur = intercept + sum(level_effects) + goal_slope * goal_contribution "
      "+ card_slope * card_score + normal(0, noise_sd)";
  j["intercept"] = t.intercept;
  j["goal_slope"] = t.goal_slope;
  j["card_slope"] = t.card_slope;
  j["noise_sd"] = t.noise_sd;
  nlohmann::ordered_json effects = nlohmann::ordered_json::object();
  for (std::string_view attribute : kCategoricalAttributes) {
    nlohmann::ordered_json levels = nlohmann::ordered_json::object();
    const auto it = t.level_effects.find(std::string(attribute));
    if (it != t.level_effects.end())
      for (const auto& [level, value] : it->second) levels[level] = value;
    effects[std::string(attribute)] = std::move(levels);
  }
  j["level_effects"] = std::move(effects);
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& r : output.records) {
    nlohmann::ordered_json row;
    row["name"] = r.name;
    row["expected_market_value_m_eur"] = t.expected_value(r);
    rows.push_back(std::move(row));
  }
  j["expected_values"] = std::move(rows);
  return j;
}

Vector implied_coefficients(const EncodedDataset& data, const Vector& expected) {
  return least_squares_solve(data.design, expected).coefficients;
}

}  // namespace marketreg::cli

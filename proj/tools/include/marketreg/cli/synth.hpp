#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "marketreg/features.hpp"

namespace marketreg::cli {

// Ground truth behind the synthetic generator. The market value of a player
// is
//
//   intercept + sum over categorical attributes of effect[attribute][level]
//             + goal_slope * goal_contribution + card_slope * card_score
//             + N(0, noise_sd^2)
//
// with goal contribution and card score on their raw (unstandardized)
// scale. Categorical attributes are the ones the encoder one-hot encodes.
struct SynthTruth {
  std::uint64_t seed = 0;
  std::size_t n = 0;
  double intercept = 0.0;
  double goal_slope = 0.0;
  double card_slope = 0.0;
  double noise_sd = 0.0;
  std::map<std::string, std::map<std::string, double>> level_effects;

  // Noise-free market value of a record under this truth.
  double expected_value(const PlayerRecord& record) const;
};

struct SynthOutput {
  std::vector<PlayerRecord> records;
  SynthTruth truth;
};

inline constexpr std::size_t kMinSynthRows = 20;

// Deterministic in (seed, n) on every platform: the engine is mt19937_64 and
// all variates are derived from its raw output here. Throws InvalidInput for
// n < kMinSynthRows.
SynthOutput generate_synthetic(std::uint64_t seed, std::size_t n);

// Sidecar document: structural truth plus each player's expected value.
nlohmann::ordered_json truth_to_json(const SynthOutput& output);

// Coefficients the OLS fit of `data` estimates when the true mean of each row
// is `expected`: the least-squares projection of the mean vector onto the
// design, so rank-dropped columns and absorbed reference levels are accounted
// for. Dropped columns get 0.
Vector implied_coefficients(const EncodedDataset& data, const Vector& expected);

}  // namespace marketreg::cli

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "coevo/errors.hpp"
#include "coevo/ga/chromosome.hpp"
#include "coevo/ga/evaluation.hpp"
#include "coevo/rng.hpp"

namespace coevo::harness {

using ga::BitChromosome;
using sim::Side;

// 'W', 'D' or 'L' per opponent, from the baseline's point of view.
inline double win_rate(const std::string& outcomes) {
  if (outcomes.empty()) return 0.0;
  double credit = 0.0;
  for (char c : outcomes) {
    if (c == 'W') credit += 1.0;
    else if (c == 'D') credit += 0.5;
    else if (c != 'L') throw ConfigError(std::string("invalid outcome code '") + c + "'");
  }
  return credit / static_cast<double>(outcomes.size());
}

/// Fixed reference player for one side, found by random search.
struct BaselineRecord {
  Side side = Side::red;
  BitChromosome chromosome;
  double win_rate = 0.0;  // draws count half
  int opponent_count = 0;
  int candidate_count = 0;
  std::uint64_t seed = 0;
  double threshold = 0.0;
  bool passed = false;
  std::string outcomes;
};

/// Random search for a baseline on `side`: `candidate_count` uniform random
/// chromosomes each play the same `random_count` uniform random opponents,
/// and the best win rate is kept (lowest index on ties). `passed` reports
/// whether it meets `threshold`; the record is returned either way.
template <typename Match>
BaselineRecord build_baseline(Side side, std::size_t random_count, std::size_t candidate_count, const Match& match,
                              std::array<std::size_t, 2> bits, double threshold, std::uint64_t seed,
                              unsigned workers) {
  if (random_count < 1 || candidate_count < 1) {
    throw ConfigError("baseline needs at least one candidate and one opponent");
  }
  const std::string label = std::string("baseline/") + sim::to_string(side);
  const Side opp = sim::opponent(side);
  Rng cand_rng(derive_seed(seed, label + "/candidates"));
  Rng opp_rng(derive_seed(seed, label + "/opponents"));
  std::vector<BitChromosome> candidates, opponents;
  for (std::size_t i = 0; i < candidate_count; ++i) {
    candidates.push_back(BitChromosome::random(bits[sim::index(side)], cand_rng));
  }
  for (std::size_t i = 0; i < random_count; ++i) {
    opponents.push_back(BitChromosome::random(bits[sim::index(opp)], opp_rng));
  }

  const auto m = ga::evaluate_matrix(side, candidates, opponents, match, workers);
  BaselineRecord best;
  for (std::size_t c = 0; c < candidate_count; ++c) {
    std::string outcomes;
    for (std::size_t o = 0; o < random_count; ++o) outcomes += m.defeats(c, o) ? 'W' : m.defeated_by(c, o) ? 'L' : 'D';
    const double rate = win_rate(outcomes);
    if (c == 0 || rate > best.win_rate) {
      best.chromosome = candidates[c];
      best.win_rate = rate;
      best.outcomes = std::move(outcomes);
    }
  }
  best.side = side;
  best.opponent_count = static_cast<int>(random_count);
  best.candidate_count = static_cast<int>(candidate_count);
  best.seed = seed;
  best.threshold = threshold;
  best.passed = best.win_rate >= threshold;
  return best;
}

// One baseline per side; red's plays the red roster.
struct BaselinePair {
  std::array<BaselineRecord, 2> sides;
  const BaselineRecord& operator[](Side s) const { return sides[sim::index(s)]; }
  BaselineRecord& operator[](Side s) { return sides[sim::index(s)]; }
};

}  // namespace coevo::harness

#pragma once

#include <cstdint>
#include <string>

#include "coevo/ga/coevolution.hpp"
#include "coevo/harness/baseline.hpp"

namespace coevo::harness {

struct MatchScores {
  double champion = 0.0;
  double baseline = 0.0;
  sim::Winner winner = sim::Winner::draw;
};

/// Champion of `side` against the opposing side's baseline, in the match
/// function's formation (the training circle).
template <typename Match>
MatchScores progress_eval(Side side, const BitChromosome& champion, const BitChromosome& opposing_baseline,
                          const Match& match) {
  const sim::SkirmishResult r = side == Side::red ? match(champion, opposing_baseline)
                                                  : match(opposing_baseline, champion);
  return {r.score(side), r.score(sim::opponent(side)), r.winner};
}

// One row of progress.csv.
struct ProgressRecord {
  int generation = 0;
  ga::Mode mode = ga::Mode::enhanced;
  std::uint64_t evaluations = 0;
  std::uint64_t total_evaluations = 0;
  std::array<ga::FitnessKey, 2> champion_fitness;
  std::array<MatchScores, 2> vs_baseline;  // by champion side
};

template <typename Match>
ProgressRecord measure_progress(const ga::GenerationReport& rep, ga::Mode mode, const BaselinePair& baselines,
                                const Match& match) {
  ProgressRecord rec;
  rec.generation = rep.generation;
  rec.mode = mode;
  rec.evaluations = rep.evaluations;
  rec.total_evaluations = rep.total_evaluations;
  rec.champion_fitness = rep.champion_fitness;
  for (Side s : {Side::red, Side::blue}) {
    rec.vs_baseline[sim::index(s)] =
        progress_eval(s, rep.champions[sim::index(s)], baselines[sim::opponent(s)].chromosome, match);
  }
  return rec;
}

}  // namespace coevo::harness

#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "coevo/ga/evaluation.hpp"
#include "coevo/harness/baseline.hpp"
#include "coevo/harness/formation.hpp"
#include "coevo/parallel.hpp"

namespace coevo::harness {

struct RobustnessEntry {
  FormationKind formation = FormationKind::circle;
  std::uint64_t seed = 0;
  double champion_score = 0.0;
  double baseline_score = 0.0;
  sim::Winner winner = sim::Winner::draw;
};

struct FormationSummary {
  FormationKind formation = FormationKind::circle;
  int count = 0;
  double mean_champion = 0.0;
  double mean_baseline = 0.0;
  double stddev_champion = 0.0;
  int champion_wins = 0;
};

struct RobustnessReport {
  Side champion_side = Side::red;
  std::vector<RobustnessEntry> entries;
  std::vector<FormationSummary> summaries;

  const FormationSummary* summary(FormationKind k) const {
    for (const auto& s : summaries) {
      if (s.formation == k) return &s;
    }
    return nullptr;
  }
};

// Per-formation means of `entries`, in first-appearance order.
inline std::vector<FormationSummary> summarize(std::span<const RobustnessEntry> entries, Side champion_side) {
  std::vector<FormationSummary> out;
  for (const RobustnessEntry& e : entries) {
    FormationSummary* s = nullptr;
    for (auto& x : out) {
      if (x.formation == e.formation) s = &x;
    }
    if (!s) s = &out.emplace_back(FormationSummary{e.formation});
    ++s->count;
    s->mean_champion += e.champion_score;
    s->mean_baseline += e.baseline_score;
    s->champion_wins += e.winner == sim::winner_of(champion_side);
  }
  for (auto& s : out) {
    s.mean_champion /= s.count;
    s.mean_baseline /= s.count;
    double var = 0.0;
    for (const RobustnessEntry& e : entries) {
      if (e.formation == s.formation) var += (e.champion_score - s.mean_champion) * (e.champion_score - s.mean_champion);
    }
    s.stddev_champion = std::sqrt(var / s.count);
  }
  return out;
}

/// Champion of `side` against the opposing baseline in every formation kind
/// with placement seeds 1..start_sets.
inline RobustnessReport robustness_eval(Side side, const BitChromosome& champion,
                                        const BitChromosome& opposing_baseline, const sim::SkirmishConfig& base,
                                        const micro::RangeTable& ranges, std::span<const FormationKind> formations,
                                        int start_sets = 10, unsigned workers = 1) {
  RobustnessReport rep;
  rep.champion_side = side;
  for (FormationKind k : formations) {
    for (int seed = 1; seed <= start_sets; ++seed) rep.entries.push_back({k, static_cast<std::uint64_t>(seed)});
  }
  const BitChromosome& red = side == Side::red ? champion : opposing_baseline;
  const BitChromosome& blue = side == Side::red ? opposing_baseline : champion;
  const auto red_g = ga::decode(red, ranges, base.rosters[0].size());
  const auto blue_g = ga::decode(blue, ranges, base.rosters[1].size());

  parallel_for(rep.entries.size(), workers, [&](std::size_t i) {
    RobustnessEntry& e = rep.entries[i];
    sim::SkirmishConfig cfg = base;
    cfg.formation.kind = e.formation;
    cfg.formation.placement_seed = e.seed;
    const sim::SkirmishResult r = sim::run_skirmish(cfg, red_g, blue_g);
    e.champion_score = r.score(side);
    e.baseline_score = r.score(sim::opponent(side));
    e.winner = r.winner;
  });
  rep.summaries = summarize(rep.entries, side);
  return rep;
}

}  // namespace coevo::harness

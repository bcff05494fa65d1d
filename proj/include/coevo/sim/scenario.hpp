#pragma once

#include "coevo/sim/skirmish.hpp"

namespace coevo::sim {

// Score values per unit type; the same table serves both sides.
inline ScoreWeight default_score_weight(const UnitTypeSpec& t) {
  if (t.name == "vulture") return {400.0, 80.0};
  if (t.name == "zealot") return {160.0, 160.0};
  return {static_cast<double>(t.max_hitpoints), static_cast<double>(t.max_hitpoints)};
}

inline void fill_default_score_weights(SkirmishConfig& cfg) {
  for (auto& side : cfg.score_weights) {
    side.clear();
    for (const UnitTypeSpec& t : cfg.unit_types) side.push_back(default_score_weight(t));
  }
}

/// Ranged vultures (red) against melee zealots (blue).
inline SkirmishConfig one_type_scenario(int vultures = 5, int zealots = 25) {
  SkirmishConfig cfg;
  cfg.unit_types = {vulture(), zealot()};
  cfg.rosters[0] = {{0, vultures}};
  cfg.rosters[1] = {{1, zealots}};
  fill_default_score_weights(cfg);
  return cfg;
}

/// Identical mixed forces on both sides; roster order is vultures, zealots.
inline SkirmishConfig two_type_scenario(int vultures = 5, int zealots = 25) {
  SkirmishConfig cfg;
  cfg.unit_types = {vulture(), zealot()};
  cfg.rosters[0] = {{0, vultures}, {1, zealots}};
  cfg.rosters[1] = {{0, vultures}, {1, zealots}};
  fill_default_score_weights(cfg);
  return cfg;
}

}  // namespace coevo::sim

#pragma once

#include <vector>

#include "coevo/ga/chromosome.hpp"
#include "coevo/micro/genome.hpp"
#include "coevo/sim/scenario.hpp"
#include "coevo/sim/skirmish.hpp"

namespace testing_helpers {

using coevo::Vec2;
using coevo::micro::MicroGenome;
using coevo::micro::Param;

// Does nothing: no pull, no targets, never flees or kites.
inline MicroGenome idle_genome() { return MicroGenome{}; }

// Walks toward the influence target at constant pull and shoots whatever is
// within its radius.
inline MicroGenome fighter_genome(double radius = 640.0) {
  MicroGenome g;
  g.set(Param::influence_weight, 8).set(Param::influence_range, 2);
  g.set(Param::attract_coeff, 8).set(Param::attract_exp, 0);
  g.set(Param::target_radius, radius);
  return g;
}

// Fighter that holds after each shot and then backs off from close threats.
inline MicroGenome kiter_genome() {
  MicroGenome g = fighter_genome();
  g.set(Param::kite_distance, 128).set(Param::kite_wait, 2).set(Param::kite_back, 96);
  return g;
}

// 1 vulture (red) vs 1 zealot (blue) at explicit positions.
inline coevo::sim::SkirmishConfig duel_config() { return coevo::sim::one_type_scenario(1, 1); }

inline coevo::harness::SpawnPositions positions(std::vector<Vec2> red, std::vector<Vec2> blue) {
  return {std::move(red), std::move(blue)};
}

inline std::vector<MicroGenome> one(const MicroGenome& g) { return {g}; }

inline std::vector<MicroGenome> random_genomes(std::size_t n, coevo::Rng& rng) {
  return coevo::ga::decode(coevo::ga::BitChromosome::random(n * coevo::ga::kBitsPerGenome, rng),
                           coevo::micro::default_range_table(), n);
}

}  // namespace testing_helpers

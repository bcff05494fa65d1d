#pragma once

#include <algorithm>
#include <cmath>
#include <span>

#include "coevo/micro/genome.hpp"
#include "coevo/vec2.hpp"

namespace coevo::micro {

inline constexpr double kDefaultMinDistance = 0.5;

// c * d^e with d clamped below at min_distance.
inline double pf_term(double coeff, double exponent, double d, double min_distance = kDefaultMinDistance) {
  if (coeff == 0.0) return 0.0;
  d = std::max(d, min_distance);
  if (exponent == 0.0) return coeff;
  return coeff * std::pow(d, exponent);
}

/// Combined attractive and repulsive magnitude at distance d.
inline double pf_force(double attract_coeff, double attract_exp, double repel_coeff, double repel_exp,
                       double d, double min_distance = kDefaultMinDistance) {
  return pf_term(attract_coeff, attract_exp, d, min_distance) +
         pf_term(repel_coeff, repel_exp, d, min_distance);
}

struct GroupMoveSettings {
  double min_distance = kDefaultMinDistance;
  double neighbor_radius = 128.0;  // friends farther than this exert no repulsion
};

/// Movement from attraction toward `target` plus a precomputed repulsion
/// sum, clamped to the unit's speed. At the target itself the pull has no
/// direction and contributes nothing.
inline Vec2 group_move_vector(Vec2 position, double move_speed, Vec2 target, Vec2 repulsion,
                              const MicroGenome& genome, const GroupMoveSettings& settings = {}) {
  Vec2 pull{};
  const Vec2 to_target = target - position;
  const double d = to_target.length();
  if (d > 0.0) {
    pull = to_target * (pf_term(genome.attract_coeff(), genome.attract_exp(), d, settings.min_distance) / d);
  }
  return clamp_length(pull + repulsion, move_speed);
}

/// Repulsion from every friend within the neighbour radius. Coincident
/// friends define no direction and are skipped.
inline Vec2 friend_repulsion(Vec2 position, std::span<const Vec2> friends, const MicroGenome& genome,
                             const GroupMoveSettings& settings = {}) {
  Vec2 sum{};
  if (genome.repel_coeff() == 0.0) return sum;
  const double r2 = settings.neighbor_radius * settings.neighbor_radius;
  for (Vec2 f : friends) {
    const Vec2 away = position - f;
    const double d2 = away.length_squared();
    if (d2 == 0.0 || d2 > r2) continue;
    const double d = std::sqrt(d2);
    sum += away * (pf_term(genome.repel_coeff(), genome.repel_exp(), d, settings.min_distance) / d);
  }
  return sum;
}

/// Attraction toward `target` plus repulsion from nearby friends, clamped to
/// the unit's speed.
inline Vec2 group_move_vector(Vec2 position, double move_speed, Vec2 target, std::span<const Vec2> friends,
                              const MicroGenome& genome, const GroupMoveSettings& settings = {}) {
  return group_move_vector(position, move_speed, target, friend_repulsion(position, friends, genome, settings),
                           genome, settings);
}

}  // namespace coevo::micro

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>

#include "coevo/micro/genome.hpp"
#include "coevo/micro/potential_field.hpp"
#include "coevo/sim/types.hpp"
#include "coevo/vec2.hpp"

namespace coevo::micro {

using sim::BehaviorMode;
using sim::UnitState;
using sim::UnitTypeSpec;

struct UnitCommand {
  Vec2 move;                        // |move| <= move speed
  std::optional<int> attack_target; // unit id of a live enemy in range
  bool operator==(const UnitCommand&) const = default;
};

// A command plus the behavior state the unit carries into the next frame.
struct Decision {
  UnitCommand command;
  BehaviorMode mode = BehaviorMode::approach;
  Vec2 kite_waypoint;
};

struct ControllerSettings {
  GroupMoveSettings group;
  double ranged_threshold = 32.0;  // attack range above which a unit kites
  Vec2 map_size{2048.0, 2048.0};
};

// Read-only snapshot a unit decides from: live enemies and live friends
// (the unit itself may appear among `friends`), plus the influence-map target
// of the unit's side and roster slot. `repulsion`, when set, is the unit's
// precomputed friend-repulsion sum (see repulsion_sum).
struct WorldView {
  std::span<const UnitState> enemies;
  std::span<const UnitState> friends;
  std::span<const UnitTypeSpec> types;
  Vec2 target_point;
  ControllerSettings settings;
  const Vec2* repulsion = nullptr;
};

inline bool is_enemy(const UnitState& self, const UnitState& other) {
  return other.side != self.side && other.alive();
}

/// Focus-fire choice among live enemies within `radius`: the weakest enemy
/// under `focus_hitpoints` if any, otherwise the nearest one. Remaining ties
/// go to the nearer unit, then the lower id. Returns an index into `units`.
inline std::optional<std::size_t> choose_attack_target(const UnitState& self,
                                                       std::span<const UnitState> units,
                                                       double focus_hitpoints, double radius) {
  const double r2 = radius * radius;
  std::optional<std::size_t> weak, near;
  double weak_d2 = 0.0, near_d2 = 0.0;
  for (std::size_t i = 0; i < units.size(); ++i) {
    const UnitState& u = units[i];
    if (!is_enemy(self, u)) continue;
    const double d2 = (u.position - self.position).length_squared();
    if (d2 > r2) continue;
    if (!near || d2 < near_d2) {
      near = i;
      near_d2 = d2;
    }
    if (u.hitpoints < focus_hitpoints) {
      const int weak_hp = weak ? units[*weak].hitpoints : 0;
      if (!weak || u.hitpoints < weak_hp || (u.hitpoints == weak_hp && d2 < weak_d2)) {
        weak = i;
        weak_d2 = d2;
      }
    }
  }
  return weak ? weak : near;
}

inline std::optional<std::size_t> nearest_enemy(const UnitState& self, std::span<const UnitState> units) {
  std::optional<std::size_t> best;
  double best_d2 = 0.0;
  for (std::size_t i = 0; i < units.size(); ++i) {
    if (!is_enemy(self, units[i])) continue;
    const double d2 = (units[i].position - self.position).length_squared();
    if (!best || d2 < best_d2) {
      best = i;
      best_d2 = d2;
    }
  }
  return best;
}

inline Vec2 clamp_to_map(Vec2 p, Vec2 map_size) {
  return {std::clamp(p.x, 0.0, map_size.x), std::clamp(p.y, 0.0, map_size.y)};
}

/// Flee when hitpoints fall below the threshold: full speed directly away
/// from the centroid of enemies within the target radius, or from the
/// nearest enemy when none is that close. A fleeing unit never attacks.
inline std::optional<Decision> flee_decision(const UnitState& self, double move_speed,
                                             std::span<const UnitState> units, const MicroGenome& genome) {
  if (!(self.hitpoints < genome.flee_hitpoints())) return std::nullopt;

  const double r2 = genome.target_radius() * genome.target_radius();
  Vec2 sum{};
  int count = 0;
  for (const UnitState& u : units) {
    if (!is_enemy(self, u)) continue;
    if ((u.position - self.position).length_squared() <= r2) {
      sum += u.position;
      ++count;
    }
  }
  Vec2 threat;
  if (count > 0) {
    threat = sum * (1.0 / count);
  } else if (auto n = nearest_enemy(self, units)) {
    threat = units[*n].position;
  } else {
    threat = self.position;
  }
  return Decision{{normalized(self.position - threat) * move_speed, std::nullopt},
                  BehaviorMode::flee, self.kite_waypoint};
}

/// Hit-and-run for ranged units.
///
/// After a shot, while the weapon reloads and the nearest threat is closer
/// than the kite distance, the unit holds for `kite_wait` frames since firing,
/// then retreats `kite_back` map-units straight away from the threat. A
/// retreat runs to its waypoint (no firing on the way) and then the unit
/// re-engages. Returns nothing when kiting does not apply this frame.
inline std::optional<Decision> kite_decision(const UnitState& self, double move_speed,
                                             std::optional<Vec2> threat, const MicroGenome& genome,
                                             Vec2 map_size) {
  auto head_to = [&](Vec2 waypoint) {
    const Vec2 to = waypoint - self.position;
    if (to.length() <= move_speed) {
      return Decision{{to, std::nullopt}, BehaviorMode::engage, waypoint};
    }
    return Decision{{normalized(to) * move_speed, std::nullopt}, BehaviorMode::kite_retreat, waypoint};
  };

  if (self.mode == BehaviorMode::kite_retreat) return head_to(self.kite_waypoint);

  if (!threat || self.kite_timer < 0 || self.cooldown_remaining <= 0) return std::nullopt;
  if (!(distance(*threat, self.position) < genome.kite_distance())) return std::nullopt;

  if (self.kite_timer < genome.kite_wait()) {
    return Decision{{}, BehaviorMode::engage, self.kite_waypoint};
  }
  const Vec2 away = normalized(self.position - *threat);
  return head_to(clamp_to_map(self.position + away * genome.kite_back(), map_size));
}

/// Sum of friend repulsion on `self` in increasing friend order. Friends
/// that are dead, coincident or beyond the neighbour radius exert nothing.
inline Vec2 repulsion_sum(const UnitState& self, std::span<const UnitState> friends, const MicroGenome& genome,
                          const GroupMoveSettings& settings) {
  Vec2 sum{};
  if (genome.repel_coeff() == 0.0) return sum;
  const double r2 = settings.neighbor_radius * settings.neighbor_radius;
  for (const UnitState& f : friends) {
    if (f.unit_id == self.unit_id || !f.alive() || f.side != self.side) continue;
    const Vec2 away = self.position - f.position;
    const double d2 = away.length_squared();
    if (d2 == 0.0 || d2 > r2) continue;
    const double d = std::sqrt(d2);
    sum += away * (pf_term(genome.repel_coeff(), genome.repel_exp(), d, settings.min_distance) / d);
  }
  return sum;
}

/// One command per live unit per frame, by priority:
/// flee, then kite, then attack (or close in on / hold against the chosen
/// target), then group movement toward the side's influence-map target.
inline Decision decide_action(const UnitState& self, const WorldView& view, const MicroGenome& genome) {
  const UnitTypeSpec& type = view.types[static_cast<std::size_t>(self.type_index)];

  if (auto d = flee_decision(self, type.move_speed, view.enemies, genome)) return *d;

  if (type.attack_range > view.settings.ranged_threshold) {
    std::optional<Vec2> threat;
    if (auto n = nearest_enemy(self, view.enemies)) threat = view.enemies[*n].position;
    if (auto d = kite_decision(self, type.move_speed, threat, genome, view.settings.map_size)) return *d;
  }

  if (auto t = choose_attack_target(self, view.enemies, genome.focus_hitpoints(), genome.target_radius())) {
    const UnitState& target = view.enemies[*t];
    const Vec2 to = target.position - self.position;
    const double d = to.length();
    if (d <= type.attack_range) {
      if (self.cooldown_remaining == 0) {
        return Decision{{{}, target.unit_id}, BehaviorMode::engage, self.kite_waypoint};
      }
      return Decision{{}, BehaviorMode::engage, self.kite_waypoint};
    }
    return Decision{{to * (std::min(type.move_speed, d) / d), std::nullopt}, BehaviorMode::engage,
                    self.kite_waypoint};
  }

  const Vec2 push = view.repulsion ? *view.repulsion : repulsion_sum(self, view.friends, genome, view.settings.group);
  return Decision{{group_move_vector(self.position, type.move_speed, view.target_point, push, genome,
                                     view.settings.group),
                   std::nullopt},
                  BehaviorMode::approach, self.kite_waypoint};
}

}  // namespace coevo::micro

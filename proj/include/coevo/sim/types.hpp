#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "coevo/errors.hpp"
#include "coevo/vec2.hpp"

namespace coevo::sim {

enum class Side : std::uint8_t { red = 0, blue = 1 };

inline constexpr Side opponent(Side s) { return s == Side::red ? Side::blue : Side::red; }
inline constexpr std::size_t index(Side s) { return static_cast<std::size_t>(s); }
inline constexpr const char* to_string(Side s) { return s == Side::red ? "red" : "blue"; }

enum class Winner : std::uint8_t { red, blue, draw };

inline constexpr const char* to_string(Winner w) {
  switch (w) {
    case Winner::red: return "red";
    case Winner::blue: return "blue";
    case Winner::draw: return "draw";
  }
  return "?";
}

inline constexpr Winner winner_of(Side s) { return s == Side::red ? Winner::red : Winner::blue; }

enum class BehaviorMode : std::uint8_t { approach, engage, kite_retreat, flee };

inline constexpr const char* to_string(BehaviorMode m) {
  switch (m) {
    case BehaviorMode::approach: return "approach";
    case BehaviorMode::engage: return "engage";
    case BehaviorMode::kite_retreat: return "kite-retreat";
    case BehaviorMode::flee: return "flee";
  }
  return "?";
}

/// Static combat statistics of a unit class.
struct UnitTypeSpec {
  std::string name;
  int max_hitpoints = 1;
  double move_speed = 1.0;     // map-units per frame
  double attack_range = 0.0;   // map-units
  int attack_damage = 0;       // hitpoints per shot
  int attack_cooldown = 1;     // frames between shots

  void validate() const {
    if (max_hitpoints <= 0) throw ConfigError("unit type '" + name + "': max_hitpoints must be > 0");
    if (!(move_speed > 0.0)) throw ConfigError("unit type '" + name + "': move_speed must be > 0");
    if (!(attack_range >= 0.0)) throw ConfigError("unit type '" + name + "': attack_range must be >= 0");
    if (attack_damage < 0) throw ConfigError("unit type '" + name + "': attack_damage must be >= 0");
    if (attack_cooldown < 1) throw ConfigError("unit type '" + name + "': attack_cooldown must be >= 1");
  }

  bool operator==(const UnitTypeSpec&) const = default;
};

// Fast, fragile, ranged.
inline UnitTypeSpec vulture() { return {"vulture", 80, 6.4, 160.0, 20, 30}; }

// Slow, durable, melee.
inline UnitTypeSpec zealot() { return {"zealot", 160, 4.0, 12.0, 16, 22}; }

struct UnitState {
  int unit_id = 0;
  Side side = Side::red;
  int type_index = 0;         // into SkirmishConfig::unit_types
  int roster_slot = 0;        // roster entry of its side; selects the genome
  Vec2 position;
  int hitpoints = 0;
  int cooldown_remaining = 0;
  BehaviorMode mode = BehaviorMode::approach;
  int kite_timer = -1;        // frames since the last shot, -1 before the first
  Vec2 kite_waypoint;

  bool alive() const { return hitpoints > 0; }
  bool operator==(const UnitState&) const = default;
};

}  // namespace coevo::sim

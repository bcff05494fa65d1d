#pragma once

#include <array>
#include <cstdint>
#include <cstdio>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "coevo/errors.hpp"
#include "coevo/harness/formation.hpp"
#include "coevo/micro/controller.hpp"
#include "coevo/micro/genome.hpp"
#include "coevo/micro/influence_map.hpp"
#include "coevo/rng.hpp"
#include "coevo/sim/types.hpp"
#include "coevo/vec2.hpp"

namespace coevo::sim {

struct RosterEntry {
  int type_index = 0;  // into SkirmishConfig::unit_types
  int count = 0;
  bool operator==(const RosterEntry&) const = default;
};

// Score values of one unit type as seen by one side: `friend_value` rewards
// its surviving hitpoints when friendly, `enemy_value` rewards damage to it
// when hostile.
struct ScoreWeight {
  double friend_value = 0.0;
  double enemy_value = 0.0;
  bool operator==(const ScoreWeight&) const = default;
};

struct SkirmishConfig {
  Vec2 map_size{2048.0, 2048.0};
  int max_frames = 2500;
  std::vector<UnitTypeSpec> unit_types;
  std::array<std::vector<RosterEntry>, 2> rosters;        // by side
  harness::FormationSpec formation;
  std::uint64_t rng_seed = 0;                            // mixed into spawn placement
  std::array<std::vector<ScoreWeight>, 2> score_weights; // by side, then unit type index
  bool normalize_enemy_term = false;  // divide damage taken by enemy max hitpoints
  double cell_size = 32.0;
  int target_recompute_interval = 8;
  micro::ControllerSettings controller;

  int unit_count(Side s) const {
    int n = 0;
    for (const RosterEntry& e : rosters[index(s)]) n += e.count;
    return n;
  }

  micro::GridSpec grid() const { return micro::GridSpec::for_map(map_size, cell_size); }

  micro::ControllerSettings controller_settings() const {
    micro::ControllerSettings c = controller;
    c.map_size = map_size;
    return c;
  }

  void validate() const {
    if (!(map_size.x > 0.0 && map_size.y > 0.0)) throw ConfigError("map_size must be positive");
    if (max_frames < 0) throw ConfigError("max_frames must be >= 0");
    if (target_recompute_interval < 1) throw ConfigError("target_recompute_interval must be >= 1");
    for (const UnitTypeSpec& t : unit_types) t.validate();
    for (Side s : {Side::red, Side::blue}) {
      const auto& roster = rosters[index(s)];
      if (roster.empty()) throw ConfigError(std::string(to_string(s)) + " roster is empty");
      for (const RosterEntry& e : roster) {
        if (e.type_index < 0 || e.type_index >= static_cast<int>(unit_types.size())) {
          throw ConfigError(std::string(to_string(s)) + " roster references an unknown unit type");
        }
        if (e.count < 1) throw ConfigError(std::string(to_string(s)) + " roster entry count must be >= 1");
      }
      if (score_weights[index(s)].size() != unit_types.size()) {
        throw ConfigError(std::string(to_string(s)) + " score weights must cover every unit type");
      }
    }
    (void)grid();
  }
};

struct ShotEvent {
  int attacker = 0;
  int target = 0;
  bool operator==(const ShotEvent&) const = default;
};

/// Live skirmish. The config must outlive the state.
struct SimulationState {
  const SkirmishConfig* config = nullptr;
  int frame = 0;
  std::vector<UnitState> units;  // unit_id == index
  std::array<std::vector<micro::MicroGenome>, 2> genomes;  // by side, then roster slot
  std::array<std::vector<Vec2>, 2> target_points;          // by side, then roster slot
  std::array<int, 2> live{0, 0};
  std::array<std::int64_t, 2> damage_dealt{0, 0};          // hitpoints removed from the other side
  std::vector<ShotEvent> shots;                            // fired during the last frame

  // Scratch reused across frames.
  micro::InfluenceGrid grid;
  std::vector<Vec2> enemy_positions;
  std::vector<micro::Decision> decisions;
  std::vector<int> pending_damage;
  std::array<std::vector<UnitState>, 2> live_units;
  std::vector<Vec2> repulsion;
};

struct UnitSnapshot {
  int id = 0;
  double x = 0.0;
  double y = 0.0;
  int hitpoints = 0;
  bool operator==(const UnitSnapshot&) const = default;
};

struct FrameSnapshot {
  int frame = 0;
  std::vector<UnitSnapshot> units;
  std::vector<ShotEvent> shots;
  bool operator==(const FrameSnapshot&) const = default;
};

struct ReplayTrace {
  std::vector<FrameSnapshot> frames;
  bool operator==(const ReplayTrace&) const = default;
};

struct SkirmishResult {
  double score_red = 0.0;
  double score_blue = 0.0;
  int survivors_red = 0;
  int survivors_blue = 0;
  std::array<std::vector<int>, 2> remaining_hitpoints;  // by side, then roster slot
  int frames_elapsed = 0;
  Winner winner = Winner::draw;

  double score(Side s) const { return s == Side::red ? score_red : score_blue; }
  int survivors(Side s) const { return s == Side::red ? survivors_red : survivors_blue; }
  bool operator==(const SkirmishResult&) const = default;
};

using SideGenomes = std::span<const micro::MicroGenome>;

namespace detail {

inline void check_arity(const SkirmishConfig& cfg, Side s, SideGenomes g) {
  const std::size_t want = cfg.rosters[index(s)].size();
  if (g.size() != want) {
    throw ConfigError(std::string(to_string(s)) + " genome has " + std::to_string(g.size() * micro::kParamCount) +
                      " parameters but its roster needs " + std::to_string(want * micro::kParamCount));
  }
}

}  // namespace detail

/// Places both rosters at explicit positions (per side, in roster order) with
/// full hitpoints and ready weapons.
inline SimulationState spawn_at(const SkirmishConfig& cfg, SideGenomes red, SideGenomes blue,
                                const harness::SpawnPositions& positions) {
  cfg.validate();
  detail::check_arity(cfg, Side::red, red);
  detail::check_arity(cfg, Side::blue, blue);

  SimulationState s;
  s.config = &cfg;
  s.genomes[0].assign(red.begin(), red.end());
  s.genomes[1].assign(blue.begin(), blue.end());
  for (Side side : {Side::red, Side::blue}) {
    const auto& roster = cfg.rosters[index(side)];
    const auto& pos = positions[index(side)];
    if (pos.size() != static_cast<std::size_t>(cfg.unit_count(side))) {
      throw ConfigError(std::string(to_string(side)) + " spawn list does not match its roster size");
    }
    std::size_t k = 0;
    for (int slot = 0; slot < static_cast<int>(roster.size()); ++slot) {
      const UnitTypeSpec& type = cfg.unit_types[static_cast<std::size_t>(roster[slot].type_index)];
      for (int i = 0; i < roster[slot].count; ++i, ++k) {
        const Vec2 p = pos[k];
        if (!(p.x >= 0.0 && p.y >= 0.0 && p.x <= cfg.map_size.x && p.y <= cfg.map_size.y)) {
          throw ConfigError("spawn position outside the map");
        }
        UnitState u;
        u.unit_id = static_cast<int>(s.units.size());
        u.side = side;
        u.type_index = roster[slot].type_index;
        u.roster_slot = slot;
        u.position = p;
        u.hitpoints = type.max_hitpoints;
        u.kite_waypoint = p;
        s.units.push_back(u);
      }
    }
    s.live[index(side)] = cfg.unit_count(side);
    s.target_points[index(side)].assign(roster.size(), cfg.map_size * 0.5);
  }
  s.grid = micro::InfluenceGrid(cfg.grid());
  return s;
}

/// Initial state with units placed by the configured formation.
inline SimulationState spawn_skirmish(const SkirmishConfig& cfg, SideGenomes red, SideGenomes blue) {
  cfg.validate();
  detail::check_arity(cfg, Side::red, red);
  detail::check_arity(cfg, Side::blue, blue);
  const auto positions = harness::generate_formation(
      cfg.formation, {cfg.unit_count(Side::red), cfg.unit_count(Side::blue)}, cfg.map_size, cfg.rng_seed);
  return spawn_at(cfg, red, blue, positions);
}

inline bool is_terminal(const SimulationState& s) {
  return s.frame >= s.config->max_frames || s.live[0] == 0 || s.live[1] == 0;
}

// Recomputes every roster slot's influence-map target from live enemies.
inline void refresh_targets(SimulationState& s) {
  const SkirmishConfig& cfg = *s.config;
  for (Side side : {Side::red, Side::blue}) {
    s.enemy_positions.clear();
    for (const UnitState& u : s.units) {
      if (u.side != side && u.alive()) s.enemy_positions.push_back(u.position);
    }
    auto& targets = s.target_points[index(side)];
    const auto& genomes = s.genomes[index(side)];
    if (s.enemy_positions.empty()) {
      std::fill(targets.begin(), targets.end(), cfg.map_size * 0.5);
      continue;
    }
    for (std::size_t slot = 0; slot < genomes.size(); ++slot) {
      const micro::MicroGenome& g = genomes[slot];
      s.grid.rebuild(s.enemy_positions, g.influence_weight(), micro::range_cells(g.influence_range()));
      targets[slot] = micro::cell_center(micro::select_target_cell(s.grid, s.enemy_positions), s.grid.spec());
    }
  }
}

// Friend repulsion for every live unit, one distance per friendly pair.
// Contributions reach each unit in increasing friend id, which matches
// micro::repulsion_sum bit for bit.
inline void compute_repulsion(SimulationState& s, const micro::GroupMoveSettings& settings) {
  s.repulsion.assign(s.units.size(), {});
  const double r2 = settings.neighbor_radius * settings.neighbor_radius;
  for (Side side : {Side::red, Side::blue}) {
    const auto& live = s.live_units[index(side)];
    const auto& genomes = s.genomes[index(side)];
    for (std::size_t i = 0; i < live.size(); ++i) {
      const UnitState& a = live[i];
      const micro::MicroGenome& ga = genomes[static_cast<std::size_t>(a.roster_slot)];
      for (std::size_t j = i + 1; j < live.size(); ++j) {
        const UnitState& b = live[j];
        const micro::MicroGenome& gb = genomes[static_cast<std::size_t>(b.roster_slot)];
        if (ga.repel_coeff() == 0.0 && gb.repel_coeff() == 0.0) continue;
        const Vec2 away = a.position - b.position;
        const double d2 = away.length_squared();
        if (d2 == 0.0 || d2 > r2) continue;
        const double d = std::sqrt(d2);
        const double ka = micro::pf_term(ga.repel_coeff(), ga.repel_exp(), d, settings.min_distance) / d;
        const double kb = a.roster_slot == b.roster_slot
                              ? ka
                              : micro::pf_term(gb.repel_coeff(), gb.repel_exp(), d, settings.min_distance) / d;
        if (ga.repel_coeff() != 0.0) s.repulsion[static_cast<std::size_t>(a.unit_id)] += away * ka;
        if (gb.repel_coeff() != 0.0) s.repulsion[static_cast<std::size_t>(b.unit_id)] += (b.position - a.position) * kb;
      }
    }
  }
}

inline FrameSnapshot snapshot(const SimulationState& s) {
  FrameSnapshot f;
  f.frame = s.frame;
  f.units.reserve(s.units.size());
  for (const UnitState& u : s.units) f.units.push_back({u.unit_id, u.position.x, u.position.y, u.hitpoints});
  f.shots = s.shots;
  return f;
}

/// Advances one frame. Every live unit decides from the frame-start state;
/// shots then land simultaneously, moves apply (clamped to the map), and
/// units at zero hitpoints leave the active roster.
inline void step(SimulationState& s, ReplayTrace* trace = nullptr) {
  if (is_terminal(s)) throw std::logic_error("step() called on a terminal skirmish");
  const SkirmishConfig& cfg = *s.config;

  for (UnitState& u : s.units) {
    if (!u.alive()) continue;
    if (u.cooldown_remaining > 0) --u.cooldown_remaining;
    if (u.kite_timer >= 0) ++u.kite_timer;
  }
  if (s.frame % cfg.target_recompute_interval == 0) refresh_targets(s);

  const micro::ControllerSettings settings = cfg.controller_settings();
  for (Side side : {Side::red, Side::blue}) {
    auto& live = s.live_units[index(side)];
    live.clear();
    for (const UnitState& u : s.units) {
      if (u.side == side && u.alive()) live.push_back(u);
    }
  }
  compute_repulsion(s, settings.group);

  s.decisions.assign(s.units.size(), {});
  for (const UnitState& u : s.units) {
    if (!u.alive()) continue;
    const auto side = index(u.side);
    const auto slot = static_cast<std::size_t>(u.roster_slot);
    const auto id = static_cast<std::size_t>(u.unit_id);
    const micro::WorldView view{s.live_units[1 - side], s.live_units[side], cfg.unit_types,
                                s.target_points[side][slot], settings, &s.repulsion[id]};
    s.decisions[id] = micro::decide_action(u, view, s.genomes[side][slot]);
  }

  s.shots.clear();
  s.pending_damage.assign(s.units.size(), 0);
  for (UnitState& u : s.units) {
    if (!u.alive()) continue;
    const micro::Decision& d = s.decisions[static_cast<std::size_t>(u.unit_id)];
    if (d.command.attack_target) {
      const UnitTypeSpec& type = cfg.unit_types[static_cast<std::size_t>(u.type_index)];
      s.pending_damage[static_cast<std::size_t>(*d.command.attack_target)] += type.attack_damage;
      s.shots.push_back({u.unit_id, *d.command.attack_target});
      u.cooldown_remaining = type.attack_cooldown;
      u.kite_timer = 0;
    }
    u.position = micro::clamp_to_map(u.position + d.command.move, cfg.map_size);
    u.mode = d.mode;
    u.kite_waypoint = d.kite_waypoint;
  }

  for (UnitState& u : s.units) {
    const int dmg = s.pending_damage[static_cast<std::size_t>(u.unit_id)];
    if (dmg == 0 || !u.alive()) continue;
    const int removed = std::min(dmg, u.hitpoints);
    u.hitpoints -= removed;
    s.damage_dealt[index(opponent(u.side))] += removed;
    if (u.hitpoints == 0) --s.live[index(u.side)];
  }

  ++s.frame;
  if (trace) trace->frames.push_back(snapshot(s));
}

/// Both terms of the damage-based score for `side`.
struct ScoreBreakdown {
  double survival = 0.0;  // sum of friend_value * hp / max_hp over friendly units
  double damage = 0.0;    // sum of enemy_value * (max_hp - hp) over enemy units
  double total() const { return survival + damage; }
};

inline ScoreBreakdown score_breakdown(Side side, std::span<const UnitState> units, const SkirmishConfig& cfg) {
  ScoreBreakdown b;
  const auto& weights = cfg.score_weights[index(side)];
  for (const UnitState& u : units) {
    const UnitTypeSpec& type = cfg.unit_types[static_cast<std::size_t>(u.type_index)];
    const ScoreWeight& w = weights[static_cast<std::size_t>(u.type_index)];
    const double max_hp = type.max_hitpoints;
    if (u.side == side) {
      b.survival += w.friend_value * (u.hitpoints / max_hp);
    } else {
      const double lost = static_cast<double>(type.max_hitpoints - u.hitpoints);
      b.damage += w.enemy_value * (cfg.normalize_enemy_term ? lost / max_hp : lost);
    }
  }
  return b;
}

inline double compute_score(Side side, std::span<const UnitState> units, const SkirmishConfig& cfg) {
  return score_breakdown(side, units, cfg).total();
}

inline double compute_score(Side side, const SimulationState& s) { return compute_score(side, s.units, *s.config); }

inline double mean_hitpoint_fraction(Side side, std::span<const UnitState> units, const SkirmishConfig& cfg) {
  double sum = 0.0;
  int n = 0;
  for (const UnitState& u : units) {
    if (u.side != side) continue;
    sum += static_cast<double>(u.hitpoints) / cfg.unit_types[static_cast<std::size_t>(u.type_index)].max_hitpoints;
    ++n;
  }
  return n == 0 ? 0.0 : sum / n;
}

/// Elimination decides; otherwise the higher mean remaining-hitpoint
/// fraction wins and equal fractions draw.
inline Winner decide_winner(const SimulationState& s) {
  if (s.live[0] == 0 && s.live[1] > 0) return Winner::blue;
  if (s.live[1] == 0 && s.live[0] > 0) return Winner::red;
  const double red = mean_hitpoint_fraction(Side::red, s.units, *s.config);
  const double blue = mean_hitpoint_fraction(Side::blue, s.units, *s.config);
  if (red > blue) return Winner::red;
  if (blue > red) return Winner::blue;
  return Winner::draw;
}

inline SkirmishResult summarize(const SimulationState& s) {
  SkirmishResult r;
  r.score_red = compute_score(Side::red, s);
  r.score_blue = compute_score(Side::blue, s);
  r.survivors_red = s.live[0];
  r.survivors_blue = s.live[1];
  for (Side side : {Side::red, Side::blue}) {
    r.remaining_hitpoints[index(side)].assign(s.config->rosters[index(side)].size(), 0);
  }
  for (const UnitState& u : s.units) {
    r.remaining_hitpoints[index(u.side)][static_cast<std::size_t>(u.roster_slot)] += u.hitpoints;
  }
  r.frames_elapsed = s.frame;
  r.winner = decide_winner(s);
  return r;
}

inline SkirmishResult run_to_end(SimulationState& s, ReplayTrace* trace = nullptr) {
  if (trace) trace->frames.push_back(snapshot(s));
  while (!is_terminal(s)) step(s, trace);
  return summarize(s);
}

/// Plays a full skirmish: until one side is eliminated or max_frames pass.
inline SkirmishResult run_skirmish(const SkirmishConfig& cfg, SideGenomes red, SideGenomes blue,
                                   ReplayTrace* trace = nullptr) {
  SimulationState s = spawn_skirmish(cfg, red, blue);
  return run_to_end(s, trace);
}

// Canonical one-line rendering; doubles print with 17 significant digits so
// the text identifies the result bit-for-bit.
inline std::string to_record(const SkirmishResult& r) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%.17g %.17g %d %d %d %s", r.score_red, r.score_blue, r.survivors_red,
                r.survivors_blue, r.frames_elapsed, to_string(r.winner));
  std::string out = buf;
  for (const auto& side : r.remaining_hitpoints) {
    out += " |";
    for (int hp : side) out += " " + std::to_string(hp);
  }
  return out;
}

inline std::uint64_t result_hash(const SkirmishResult& r) { return fnv1a64(to_record(r)); }

}  // namespace coevo::sim

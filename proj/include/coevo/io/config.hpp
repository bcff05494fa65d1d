#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>

#include "json.hpp"

#include "coevo/errors.hpp"
#include "coevo/ga/coevolution.hpp"
#include "coevo/harness/formation.hpp"
#include "coevo/micro/genome.hpp"
#include "coevo/rng.hpp"
#include "coevo/sim/scenario.hpp"

namespace coevo::io {

using json = nlohmann::json;

enum class ScenarioKind { one_type, two_type };

inline const char* to_string(ScenarioKind k) { return k == ScenarioKind::one_type ? "one-type" : "two-type"; }

struct ScenarioSettings {
  ScenarioKind kind = ScenarioKind::one_type;
  int vultures = 5;
  int zealots = 25;
};

struct BaselineSettings {
  std::size_t random_opponents = 200;
  std::size_t candidates = 50;
  std::optional<double> threshold;  // unset: 0.90 one-type, 0.99 two-type

  double gate(ScenarioKind k) const { return threshold ? *threshold : k == ScenarioKind::one_type ? 0.90 : 0.99; }
};

/// Everything a run needs apart from the verb and the worker count.
struct RunConfig {
  ScenarioSettings scenario;
  ga::CoevolutionSettings ga;
  int generations = 60;
  sim::SkirmishConfig skirmish = sim::one_type_scenario();
  micro::RangeTable ranges = micro::default_range_table();
  BaselineSettings baseline;
  int start_sets = 10;
  std::uint64_t seed = 0;
  std::string output = "run";

  std::array<std::size_t, 2> chromosome_bits() const {
    return {skirmish.rosters[0].size() * ga::kBitsPerGenome, skirmish.rosters[1].size() * ga::kBitsPerGenome};
  }
};

namespace detail {

// Reads the members of one JSON object and rejects any it did not consume.
class ObjectReader {
 public:
  ObjectReader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(where() + ": expected an object");
  }

  template <typename T>
  void read(const char* key, T& out) {
    seen_.insert(key);
    auto it = j_.find(key);
    if (it == j_.end()) return;
    try {
      out = it->template get<T>();
    } catch (const json::exception&) {
      throw ConfigError(field(key) + ": wrong type");
    }
  }

  const json* child(const char* key) {
    seen_.insert(key);
    auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  std::string field(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!seen_.count(it.key())) throw ConfigError(field(it.key()) + ": unknown key");
    }
  }

 private:
  std::string where() const { return path_.empty() ? "config" : path_; }

  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

inline void require(bool ok, const std::string& field, const std::string& what) {
  if (!ok) throw ConfigError(field + ": " + what);
}

inline void read_unit_type(const json& j, const std::string& path, sim::UnitTypeSpec& t) {
  ObjectReader r(j, path);
  r.read("max_hitpoints", t.max_hitpoints);
  r.read("move_speed", t.move_speed);
  r.read("attack_range", t.attack_range);
  r.read("attack_damage", t.attack_damage);
  r.read("attack_cooldown", t.attack_cooldown);
  r.finish();
  t.validate();
}

inline void read_formation(const json& j, const std::string& path, harness::FormationSpec& f) {
  ObjectReader r(j, path);
  std::string kind = harness::to_string(f.kind);
  r.read("kind", kind);
  try {
    f.kind = harness::parse_formation_kind(kind);
  } catch (const ConfigError& e) {
    throw ConfigError(r.field("kind") + ": " + e.what());
  }
  r.read("placement_seed", f.placement_seed);
  r.read("circle_radius", f.circle_radius);
  r.read("line_separation", f.line_separation);
  r.read("line_spacing", f.line_spacing);
  r.read("line_jitter", f.line_jitter);
  r.read("random_width", f.random_width);
  r.read("random_height", f.random_height);
  r.read("side_gap", f.side_gap);
  r.finish();
}

}  // namespace detail

/// Parses a config document. Missing keys keep their defaults; unknown keys
/// and out-of-range values raise ConfigError naming the field.
inline RunConfig parse_config(const json& root) {
  using detail::ObjectReader;
  using detail::require;
  RunConfig c;
  ObjectReader top(root, "");

  if (const json* s = top.child("scenario")) {
    ObjectReader r(*s, "scenario");
    std::string kind = to_string(c.scenario.kind);
    r.read("kind", kind);
    require(kind == "one-type" || kind == "two-type", r.field("kind"), "must be one-type or two-type");
    c.scenario.kind = kind == "one-type" ? ScenarioKind::one_type : ScenarioKind::two_type;
    r.read("vultures", c.scenario.vultures);
    r.read("zealots", c.scenario.zealots);
    r.finish();
    require(c.scenario.vultures >= 1, r.field("vultures"), "must be >= 1");
    require(c.scenario.zealots >= 1, r.field("zealots"), "must be >= 1");
  }
  c.skirmish = c.scenario.kind == ScenarioKind::one_type
                   ? sim::one_type_scenario(c.scenario.vultures, c.scenario.zealots)
                   : sim::two_type_scenario(c.scenario.vultures, c.scenario.zealots);

  if (const json* g = top.child("ga")) {
    ObjectReader r(*g, "ga");
    r.read("population_size", c.ga.population_size);
    r.read("generations", c.generations);
    r.read("crossover_rate", c.ga.crossover_rate);
    r.read("mutation_rate", c.ga.mutation_rate);
    std::string mode = ga::to_string(c.ga.mode), sharing = ga::to_string(c.ga.sharing);
    r.read("mode", mode);
    r.read("sample_size", c.ga.sample_size);
    r.read("hof_size", c.ga.hof_size);
    r.read("sharing", sharing);
    r.finish();
    require(c.ga.population_size >= 2, r.field("population_size"), "must be >= 2");
    require(c.generations >= 1, r.field("generations"), "must be >= 1");
    require(c.ga.crossover_rate >= 0.0 && c.ga.crossover_rate <= 1.0, r.field("crossover_rate"), "must be in [0, 1]");
    require(c.ga.mutation_rate >= 0.0 && c.ga.mutation_rate <= 1.0, r.field("mutation_rate"), "must be in [0, 1]");
    require(mode == "simple" || mode == "enhanced", r.field("mode"), "must be simple or enhanced");
    require(sharing == "win-credit" || sharing == "score", r.field("sharing"), "must be win-credit or score");
    require(c.ga.sample_size >= 1, r.field("sample_size"), "must be >= 1");
    c.ga.mode = ga::parse_mode(mode);
    c.ga.sharing = ga::parse_sharing_mode(sharing);
  }

  if (const json* s = top.child("skirmish")) {
    ObjectReader r(*s, "skirmish");
    auto& k = c.skirmish;
    r.read("max_frames", k.max_frames);
    r.read("map_width", k.map_size.x);
    r.read("map_height", k.map_size.y);
    r.read("cell_size", k.cell_size);
    r.read("target_recompute_interval", k.target_recompute_interval);
    r.read("normalize_enemy_term", k.normalize_enemy_term);
    r.read("neighbor_radius", k.controller.group.neighbor_radius);
    if (const json* f = r.child("formation")) detail::read_formation(*f, r.field("formation"), k.formation);
    if (const json* u = r.child("unit_types")) {
      ObjectReader ur(*u, r.field("unit_types"));
      for (auto& t : k.unit_types) {
        if (const json* tj = ur.child(t.name.c_str())) detail::read_unit_type(*tj, ur.field(t.name), t);
      }
      ur.finish();
    }
    r.finish();
    require(k.max_frames >= 0, r.field("max_frames"), "must be >= 0");
    require(k.map_size.x > 0.0 && k.map_size.y > 0.0, r.field("map_width"), "map dimensions must be > 0");
    require(k.cell_size > 0.0, r.field("cell_size"), "must be > 0");
    require(k.target_recompute_interval >= 1, r.field("target_recompute_interval"), "must be >= 1");
    require(k.controller.group.neighbor_radius >= 0.0, r.field("neighbor_radius"), "must be >= 0");
  }

  if (const json* rj = top.child("ranges")) {
    ObjectReader r(*rj, "ranges");
    for (std::size_t i = 0; i < micro::kParamCount; ++i) {
      const std::string name(micro::kParamNames[i]);
      std::array<double, 2> lohi{c.ranges[i].lo, c.ranges[i].hi};
      r.read(name.c_str(), lohi);
      require(lohi[0] <= lohi[1], r.field(name), "lower bound exceeds upper bound");
      c.ranges[i] = {lohi[0], lohi[1]};
    }
    r.finish();
  }

  if (const json* b = top.child("baseline")) {
    ObjectReader r(*b, "baseline");
    r.read("random_opponents", c.baseline.random_opponents);
    r.read("candidates", c.baseline.candidates);
    double t = -1.0;
    r.read("threshold", t);
    r.finish();
    if (t != -1.0) {
      require(t >= 0.0 && t <= 1.0, r.field("threshold"), "must be in [0, 1]");
      c.baseline.threshold = t;
    }
    require(c.baseline.random_opponents >= 1, r.field("random_opponents"), "must be >= 1");
    require(c.baseline.candidates >= 1, r.field("candidates"), "must be >= 1");
  }

  top.read("start_sets", c.start_sets);
  top.read("seed", c.seed);
  top.read("output", c.output);
  top.finish();
  require(c.start_sets >= 1, "start_sets", "must be >= 1");
  c.skirmish.validate();
  return c;
}

inline RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  json root;
  try {
    root = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("malformed config '" + path + "': " + e.what());
  }
  return parse_config(root);
}

/// Canonical document for a config; parse_config(to_json(c)) == c.
inline json to_json(const RunConfig& c) {
  json ranges = json::object();
  for (std::size_t i = 0; i < micro::kParamCount; ++i) {
    ranges[std::string(micro::kParamNames[i])] = {c.ranges[i].lo, c.ranges[i].hi};
  }
  json units = json::object();
  for (const auto& t : c.skirmish.unit_types) {
    units[t.name] = {{"max_hitpoints", t.max_hitpoints},
                     {"move_speed", t.move_speed},
                     {"attack_range", t.attack_range},
                     {"attack_damage", t.attack_damage},
                     {"attack_cooldown", t.attack_cooldown}};
  }
  const auto& f = c.skirmish.formation;
  return {
      {"scenario", {{"kind", to_string(c.scenario.kind)}, {"vultures", c.scenario.vultures}, {"zealots", c.scenario.zealots}}},
      {"ga",
       {{"population_size", c.ga.population_size},
        {"generations", c.generations},
        {"crossover_rate", c.ga.crossover_rate},
        {"mutation_rate", c.ga.mutation_rate},
        {"mode", ga::to_string(c.ga.mode)},
        {"sample_size", c.ga.sample_size},
        {"hof_size", c.ga.hof_size},
        {"sharing", ga::to_string(c.ga.sharing)}}},
      {"skirmish",
       {{"max_frames", c.skirmish.max_frames},
        {"map_width", c.skirmish.map_size.x},
        {"map_height", c.skirmish.map_size.y},
        {"cell_size", c.skirmish.cell_size},
        {"target_recompute_interval", c.skirmish.target_recompute_interval},
        {"normalize_enemy_term", c.skirmish.normalize_enemy_term},
        {"neighbor_radius", c.skirmish.controller.group.neighbor_radius},
        {"formation",
         {{"kind", harness::to_string(f.kind)},
          {"placement_seed", f.placement_seed},
          {"circle_radius", f.circle_radius},
          {"line_separation", f.line_separation},
          {"line_spacing", f.line_spacing},
          {"line_jitter", f.line_jitter},
          {"random_width", f.random_width},
          {"random_height", f.random_height},
          {"side_gap", f.side_gap}}},
        {"unit_types", units}}},
      {"ranges", ranges},
      {"baseline",
       {{"random_opponents", c.baseline.random_opponents},
        {"candidates", c.baseline.candidates},
        {"threshold", c.baseline.gate(c.scenario.kind)}}},
      {"start_sets", c.start_sets},
      {"seed", c.seed},
      {"output", c.output},
  };
}

// Hash of everything that affects results; the output directory is left out.
inline std::uint64_t config_hash(const RunConfig& c) {
  json j = to_json(c);
  j.erase("output");
  return fnv1a64(j.dump());
}

inline std::string hex64(std::uint64_t v) {
  std::ostringstream out;
  out << std::hex;
  out.width(16);
  out.fill('0');
  out << v;
  return out.str();
}

}  // namespace coevo::io

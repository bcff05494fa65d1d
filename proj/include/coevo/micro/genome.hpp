#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>

namespace coevo::micro {

// Index of each evolved parameter inside a genome and its chromosome field.
enum class Param : std::size_t {
  influence_weight = 0,
  influence_range,
  attract_coeff,
  attract_exp,
  repel_coeff,
  repel_exp,
  focus_hitpoints,
  target_radius,
  kite_distance,
  kite_wait,
  kite_back,
  flee_hitpoints,
};

inline constexpr std::size_t kParamCount = 12;

inline constexpr std::array<std::string_view, kParamCount> kParamNames = {
    "influence_weight", "influence_range", "attract_coeff", "attract_exp",
    "repel_coeff",      "repel_exp",       "focus_hitpoints", "target_radius",
    "kite_distance",    "kite_wait",       "kite_back",       "flee_hitpoints",
};

/// Decoded micro parameters governing every unit of one type on one side.
///
/// Values are stored in chromosome field order; the named accessors give the
/// role of each field.
struct MicroGenome {
  std::array<double, kParamCount> values{};

  double& operator[](Param p) { return values[static_cast<std::size_t>(p)]; }
  double operator[](Param p) const { return values[static_cast<std::size_t>(p)]; }
  double& operator[](std::size_t i) { return values[i]; }
  double operator[](std::size_t i) const { return values[i]; }

  // Weight stamped per enemy on the influence map.
  double influence_weight() const { return (*this)[Param::influence_weight]; }
  // Influence radius in cells.
  double influence_range() const { return (*this)[Param::influence_range]; }
  double attract_coeff() const { return (*this)[Param::attract_coeff]; }
  double attract_exp() const { return (*this)[Param::attract_exp]; }
  double repel_coeff() const { return (*this)[Param::repel_coeff]; }
  double repel_exp() const { return (*this)[Param::repel_exp]; }
  // Enemies below this hitpoint count are focused first.
  double focus_hitpoints() const { return (*this)[Param::focus_hitpoints]; }
  // Map-units searched for attack targets.
  double target_radius() const { return (*this)[Param::target_radius]; }
  // Threat distance that triggers kiting.
  double kite_distance() const { return (*this)[Param::kite_distance]; }
  // Frames held after firing before retreating.
  double kite_wait() const { return (*this)[Param::kite_wait]; }
  // Retreat distance in map-units.
  double kite_back() const { return (*this)[Param::kite_back]; }
  // Flee once hitpoints drop below this.
  double flee_hitpoints() const { return (*this)[Param::flee_hitpoints]; }

  MicroGenome& set(Param p, double v) {
    (*this)[p] = v;
    return *this;
  }

  bool operator==(const MicroGenome&) const = default;
};

struct ParamRange {
  double lo = 0.0;
  double hi = 0.0;
  bool operator==(const ParamRange&) const = default;
};

using RangeTable = std::array<ParamRange, kParamCount>;

// Default bounds; they bracket the built-in unit statistics.
inline constexpr RangeTable default_range_table() {
  return {{
      {0.0, 64.0},   // influence_weight
      {0.0, 10.0},   // influence_range (cells)
      {0.0, 64.0},   // attract_coeff
      {0.0, 2.0},    // attract_exp
      {0.0, 64.0},   // repel_coeff
      {-3.0, 0.0},   // repel_exp
      {0.0, 160.0},  // focus_hitpoints
      {0.0, 640.0},  // target_radius
      {0.0, 256.0},  // kite_distance
      {0.0, 60.0},   // kite_wait (frames)
      {0.0, 128.0},  // kite_back
      {0.0, 160.0},  // flee_hitpoints
  }};
}

inline bool within_ranges(const MicroGenome& g, const RangeTable& ranges) {
  for (std::size_t i = 0; i < kParamCount; ++i) {
    if (g[i] < ranges[i].lo || g[i] > ranges[i].hi) return false;
  }
  return true;
}

}  // namespace coevo::micro

#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "coevo/errors.hpp"
#include "coevo/rng.hpp"
#include "coevo/vec2.hpp"

namespace coevo::harness {

enum class FormationKind : std::uint8_t { circle, line, random };

inline constexpr std::array<FormationKind, 3> kAllFormations = {FormationKind::circle, FormationKind::line,
                                                                 FormationKind::random};

inline constexpr const char* to_string(FormationKind k) {
  switch (k) {
    case FormationKind::circle: return "circle";
    case FormationKind::line: return "line";
    case FormationKind::random: return "random";
  }
  return "?";
}

inline FormationKind parse_formation_kind(std::string_view s) {
  if (s == "circle") return FormationKind::circle;
  if (s == "line") return FormationKind::line;
  if (s == "random") return FormationKind::random;
  throw ConfigError("unknown formation kind '" + std::string(s) + "'");
}

// Geometry is in map-units and centred on the map centre. Red always spawns
// on the west side, blue on the east; `side_gap` keeps the regions disjoint.
struct FormationSpec {
  FormationKind kind = FormationKind::circle;
  std::uint64_t placement_seed = 0;
  double circle_radius = 320.0;
  double line_separation = 480.0;
  double line_spacing = 24.0;
  double line_jitter = 256.0;     // max offset of the whole line pair per axis
  double random_width = 768.0;    // per-side box
  double random_height = 1536.0;
  double side_gap = 128.0;
  double min_area_per_unit = 64.0;
  bool mirror = false;  // blue copies red reflected across the dividing axis (equal counts only)

  bool operator==(const FormationSpec&) const = default;
};

using SpawnPositions = std::array<std::vector<Vec2>, 2>;  // indexed by side

namespace detail {

inline void check_inside(const SpawnPositions& out, Vec2 map_size) {
  for (const auto& side : out) {
    for (Vec2 p : side) {
      if (!(p.x >= 0.0 && p.y >= 0.0 && p.x <= map_size.x && p.y <= map_size.y)) {
        throw ConfigError("formation places a unit outside the map");
      }
    }
  }
}

inline void check_capacity(int count, double area, const FormationSpec& spec) {
  if (count > 0 && area / count < spec.min_area_per_unit) {
    throw ConfigError("roster of " + std::to_string(count) + " units does not fit the " +
                      to_string(spec.kind) + " formation");
  }
}

}  // namespace detail

/// Spawn positions for both sides, deterministic in (spec, counts, seed).
/// `seed` is mixed with spec.placement_seed.
inline SpawnPositions generate_formation(const FormationSpec& spec, std::array<int, 2> counts, Vec2 map_size,
                                         std::uint64_t seed = 0) {
  Rng rng(derive_seed(derive_seed(seed, spec.placement_seed), to_string(spec.kind)));
  const Vec2 c = map_size * 0.5;
  const double half_gap = spec.side_gap * 0.5;
  SpawnPositions out;
  double axis = c.x;

  switch (spec.kind) {
    case FormationKind::circle: {
      const double r = spec.circle_radius;
      if (!(r > half_gap)) throw ConfigError("circle_radius must exceed half the side gap");
      if (c.x - r < 0.0 || c.y - r < 0.0) throw ConfigError("circle formation does not fit the map");
      // Half-disk minus the gap strip: pi r^2 / 2 - gap * r is a lower bound.
      const double area = 0.5 * std::numbers::pi * r * r - spec.side_gap * r;
      for (std::size_t s = 0; s < 2; ++s) {
        detail::check_capacity(counts[s], area, spec);
        const double sign = s == 0 ? -1.0 : 1.0;
        for (int i = 0; i < counts[s]; ++i) {
          Vec2 p;
          do {
            p = {rng.uniform(half_gap, r), rng.uniform(-r, r)};
          } while (p.length_squared() > r * r);
          out[s].push_back({c.x + sign * p.x, c.y + p.y});
        }
      }
      break;
    }
    case FormationKind::line: {
      const Vec2 offset{rng.uniform(-spec.line_jitter, spec.line_jitter),
                        rng.uniform(-spec.line_jitter, spec.line_jitter)};
      if (!(spec.line_separation > 0.0) || !(spec.line_spacing > 0.0)) {
        throw ConfigError("line formation needs positive separation and spacing");
      }
      axis = c.x + offset.x;
      for (std::size_t s = 0; s < 2; ++s) {
        const double span = (counts[s] - 1) * spec.line_spacing;
        if (span > map_size.y) throw ConfigError("roster does not fit the line formation");
        const double x = c.x + offset.x + (s == 0 ? -0.5 : 0.5) * spec.line_separation;
        for (int i = 0; i < counts[s]; ++i) {
          out[s].push_back({x, c.y + offset.y - 0.5 * span + i * spec.line_spacing});
        }
      }
      break;
    }
    case FormationKind::random: {
      const double w = spec.random_width, h = spec.random_height;
      if (!(w > 0.0 && h > 0.0)) throw ConfigError("random formation box must be non-empty");
      for (std::size_t s = 0; s < 2; ++s) {
        detail::check_capacity(counts[s], w * h, spec);
        const double x0 = s == 0 ? c.x - half_gap - w : c.x + half_gap;
        for (int i = 0; i < counts[s]; ++i) {
          out[s].push_back({x0 + rng.uniform() * w, c.y - 0.5 * h + rng.uniform() * h});
        }
      }
      break;
    }
  }
  if (spec.mirror) {
    if (counts[0] != counts[1]) throw ConfigError("mirrored formation needs equal unit counts");
    out[1].clear();
    for (Vec2 p : out[0]) out[1].push_back({2.0 * axis - p.x, p.y});
  }
  detail::check_inside(out, map_size);
  return out;
}

}  // namespace coevo::harness

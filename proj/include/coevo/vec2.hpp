#pragma once

#include <cmath>

namespace coevo {

// Map-space vector in map-units.
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
  constexpr Vec2& operator+=(Vec2 o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  constexpr bool operator==(const Vec2&) const = default;

  double length() const { return std::sqrt(x * x + y * y); }
  constexpr double length_squared() const { return x * x + y * y; }
};

inline double distance(Vec2 a, Vec2 b) { return (a - b).length(); }

// Unit vector along v, or zero when v has no direction.
inline Vec2 normalized(Vec2 v) {
  const double len = v.length();
  if (len == 0.0) return {};
  return {v.x / len, v.y / len};
}

// Rescales v so its length does not exceed max_len.
inline Vec2 clamp_length(Vec2 v, double max_len) {
  const double len = v.length();
  if (len <= max_len || len == 0.0) return v;
  const double s = max_len / len;
  return {v.x * s, v.y * s};
}

}  // namespace coevo

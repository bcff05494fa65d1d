#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdlib>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "coevo/errors.hpp"
#include "coevo/vec2.hpp"

namespace coevo::micro {

struct GridSpec {
  double cell_size = 32.0;
  int width = 64;   // columns
  int height = 64;  // rows

  static GridSpec for_map(Vec2 map_size, double cell_size) {
    if (!(cell_size > 0.0)) throw ConfigError("cell_size must be > 0");
    return {cell_size, std::max(1, static_cast<int>(std::ceil(map_size.x / cell_size))),
            std::max(1, static_cast<int>(std::ceil(map_size.y / cell_size)))};
  }

  std::size_t cell_count() const { return static_cast<std::size_t>(width) * height; }
  bool operator==(const GridSpec&) const = default;
};

struct Cell {
  int row = 0;
  int col = 0;
  auto operator<=>(const Cell&) const = default;
};

inline Cell cell_of(Vec2 p, const GridSpec& g) {
  const int col = std::clamp(static_cast<int>(std::floor(p.x / g.cell_size)), 0, g.width - 1);
  const int row = std::clamp(static_cast<int>(std::floor(p.y / g.cell_size)), 0, g.height - 1);
  return {row, col};
}

inline Vec2 cell_center(Cell c, const GridSpec& g) {
  return {(c.col + 0.5) * g.cell_size, (c.row + 0.5) * g.cell_size};
}

inline int chebyshev(Cell a, Cell b) { return std::max(std::abs(a.row - b.row), std::abs(a.col - b.col)); }

/// Enemy-presence map over the grid.
///
/// Every enemy adds weight * (range + 1 - d) / (range + 1) to each cell at
/// Chebyshev cell distance d <= range from its own cell. The integer part
/// sum(range + 1 - d) is accumulated per cell and scaled once, so a cell's
/// value does not depend on the order in which enemies are stamped.
class InfluenceGrid {
 public:
  InfluenceGrid() = default;
  explicit InfluenceGrid(GridSpec spec) : spec_(spec), coverage_(spec.cell_count(), 0) {}

  const GridSpec& spec() const { return spec_; }
  double weight() const { return weight_; }
  int range() const { return range_; }

  std::int64_t coverage(int row, int col) const { return coverage_[flat(row, col)]; }

  double value(int row, int col) const { return scale(coverage(row, col)); }
  double value(Cell c) const { return value(c.row, c.col); }

  // Row-major copy of every cell value.
  std::vector<double> values() const {
    std::vector<double> out(coverage_.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = scale(coverage_[i]);
    return out;
  }

  bool empty_support() const { return stamps_.empty(); }

  // Cell rectangles touched by each enemy (inclusive bounds). Every cell with
  // nonzero coverage lies in at least one of them.
  struct Rect {
    int row_min, row_max, col_min, col_max;
  };
  const std::vector<Rect>& stamps() const { return stamps_; }

  void rebuild(std::span<const Vec2> enemies, double weight, int range_cells) {
    clear_support();
    weight_ = weight;
    range_ = std::max(0, range_cells);
    for (Vec2 p : enemies) stamp(cell_of(p, spec_));
  }

 private:
  std::size_t flat(int row, int col) const { return static_cast<std::size_t>(row) * spec_.width + col; }

  double scale(std::int64_t c) const {
    return weight_ * static_cast<double>(c) / static_cast<double>(range_ + 1);
  }

  void clear_support() {
    for (const Rect& r : stamps_) {
      for (int row = r.row_min; row <= r.row_max; ++row) {
        std::fill_n(coverage_.begin() + static_cast<std::ptrdiff_t>(flat(row, r.col_min)),
                    r.col_max - r.col_min + 1, 0);
      }
    }
    stamps_.clear();
  }

  void stamp(Cell at) {
    const Rect rect{std::max(0, at.row - range_), std::min(spec_.height - 1, at.row + range_),
                    std::max(0, at.col - range_), std::min(spec_.width - 1, at.col + range_)};
    for (int r = rect.row_min; r <= rect.row_max; ++r) {
      const int dr = std::abs(r - at.row);
      std::int64_t* row = &coverage_[flat(r, 0)];
      for (int c = rect.col_min; c <= rect.col_max; ++c) {
        row[c] += range_ + 1 - std::max(dr, std::abs(c - at.col));
      }
    }
    stamps_.push_back(rect);
  }

  GridSpec spec_{};
  std::vector<std::int64_t> coverage_;
  double weight_ = 0.0;
  int range_ = 0;
  std::vector<Rect> stamps_;
};

// Influence ranges are whole cells; decoded genome values are rounded.
inline int range_cells(double influence_range) {
  return std::max(0, static_cast<int>(std::lround(influence_range)));
}

inline InfluenceGrid build_influence_grid(std::span<const Vec2> enemies, double weight,
                                          int range, const GridSpec& spec) {
  InfluenceGrid grid(spec);
  grid.rebuild(enemies, weight, range);
  return grid;
}

namespace detail {

inline double nearest_enemy_sq(Vec2 p, std::span<const Vec2> enemies) {
  double best = std::numeric_limits<double>::infinity();
  for (Vec2 e : enemies) best = std::min(best, (e - p).length_squared());
  return best;
}

}  // namespace detail

/// Attack location for a side: the lowest positive-influence cell, ties going
/// to the cell nearest an enemy and then to the smallest (row, col).
///
/// When no cell is positive (zero weight) every cell ties at zero and the
/// distance rule alone decides, which lands on or next to an enemy's cell.
inline Cell select_target_cell(const InfluenceGrid& grid, std::span<const Vec2> enemies) {
  if (enemies.empty()) throw UndefinedTargetError("no enemy units to target");
  const GridSpec& g = grid.spec();

  Cell best{};
  double best_dist = std::numeric_limits<double>::infinity();
  bool found = false;

  auto consider = [&](Cell c) {
    const double d = detail::nearest_enemy_sq(cell_center(c, g), enemies);
    if (!found || d < best_dist || (d == best_dist && c < best)) {
      best = c;
      best_dist = d;
      found = true;
    }
  };

  if (grid.weight() > 0.0 && !grid.empty_support()) {
    // Overlapping stamps visit some cells twice; neither pass cares.
    std::int64_t min_cov = std::numeric_limits<std::int64_t>::max();
    for (const auto& rect : grid.stamps()) {
      for (int r = rect.row_min; r <= rect.row_max; ++r) {
        for (int c = rect.col_min; c <= rect.col_max; ++c) {
          const std::int64_t v = grid.coverage(r, c);
          if (v < min_cov) min_cov = v;
        }
      }
    }
    for (const auto& rect : grid.stamps()) {
      for (int r = rect.row_min; r <= rect.row_max; ++r) {
        for (int c = rect.col_min; c <= rect.col_max; ++c) {
          if (grid.coverage(r, c) == min_cov) consider({r, c});
        }
      }
    }
    return best;
  }

  // The cell center nearest any point is the point's own cell or, on a cell
  // boundary, a neighbour at equal distance, so 3x3 blocks around enemy
  // cells contain every minimiser.
  for (Vec2 e : enemies) {
    const Cell home = cell_of(e, g);
    for (int dr = -1; dr <= 1; ++dr) {
      for (int dc = -1; dc <= 1; ++dc) {
        const Cell c{home.row + dr, home.col + dc};
        if (c.row < 0 || c.col < 0 || c.row >= g.height || c.col >= g.width) continue;
        consider(c);
      }
    }
  }
  return best;
}

}  // namespace coevo::micro

#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "coevo/errors.hpp"
#include "coevo/ga/evaluation.hpp"
#include "coevo/ga/operators.hpp"
#include "coevo/rng.hpp"

namespace coevo::ga {

// What an opponent's credit is split by among the members that earned it.
enum class SharingMode { win_credit, score };

inline const char* to_string(SharingMode m) { return m == SharingMode::win_credit ? "win-credit" : "score"; }

inline SharingMode parse_sharing_mode(std::string_view s) {
  if (s == "win-credit") return SharingMode::win_credit;
  if (s == "score") return SharingMode::score;
  throw ConfigError("unknown sharing mode '" + std::string(s) + "'");
}

/// Competitive fitness sharing over defeats: each opponent i hands 1 / N_i to
/// every member that beat it, N_i being how many members beat it.
inline std::vector<double> shared_fitness(const EvaluationMatrix& m) {
  std::vector<int> beaten_by(m.opponents(), 0);
  for (std::size_t j = 0; j < m.members(); ++j) {
    for (std::size_t i = 0; i < m.opponents(); ++i) beaten_by[i] += m.defeats(j, i);
  }
  std::vector<double> f(m.members(), 0.0);
  for (std::size_t j = 0; j < m.members(); ++j) {
    for (std::size_t i = 0; i < m.opponents(); ++i) {
      if (m.defeats(j, i)) f[j] += 1.0 / beaten_by[i];
    }
  }
  return f;
}

/// Score variant: each opponent hands out 1.0 in proportion to the scores
/// members earned against it. An opponent nobody scored on hands out nothing.
inline std::vector<double> score_shared_fitness(const EvaluationMatrix& m) {
  std::vector<double> total(m.opponents(), 0.0);
  for (std::size_t j = 0; j < m.members(); ++j) {
    for (std::size_t i = 0; i < m.opponents(); ++i) total[i] += m.at(j, i).member_score;
  }
  std::vector<double> f(m.members(), 0.0);
  for (std::size_t j = 0; j < m.members(); ++j) {
    for (std::size_t i = 0; i < m.opponents(); ++i) {
      if (total[i] > 0.0) f[j] += m.at(j, i).member_score / total[i];
    }
  }
  return f;
}

// Selection keys: shared fitness first, mean raw score as tie-break.
inline std::vector<FitnessKey> shared_keys(const EvaluationMatrix& m, SharingMode mode) {
  const auto f = mode == SharingMode::win_credit ? shared_fitness(m) : score_shared_fitness(m);
  std::vector<FitnessKey> keys(m.members());
  for (std::size_t j = 0; j < keys.size(); ++j) keys[j] = {f[j], m.mean_member_score(j)};
  return keys;
}

// Selection keys from mean raw score alone.
inline std::vector<FitnessKey> raw_keys(const EvaluationMatrix& m) {
  std::vector<FitnessKey> keys(m.members());
  for (std::size_t j = 0; j < keys.size(); ++j) keys[j] = {m.mean_member_score(j), 0.0};
  return keys;
}

/// Greedy coverage sample.
///
/// `candidates` has one row per opposing individual and one column per
/// individual of ours it played; defeats(row, col) means the candidate beat
/// ours. Each pick maximises newly covered columns (then total defeats, then
/// lower row). When no pick adds coverage, remaining slots go to the
/// highest mean-score candidates. Returns row indices in pick order.
inline std::vector<std::size_t> build_shared_sample(const EvaluationMatrix& candidates, std::size_t k) {
  const std::size_t rows = candidates.members(), cols = candidates.opponents();
  k = std::min(k, rows);
  std::vector<int> total(rows, 0);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) total[r] += candidates.defeats(r, c);
  }

  std::vector<std::size_t> picked;
  std::vector<bool> taken(rows, false), covered(cols, false);
  while (picked.size() < k) {
    std::size_t best = rows;
    int best_gain = 0;
    for (std::size_t r = 0; r < rows; ++r) {
      if (taken[r]) continue;
      int gain = 0;
      for (std::size_t c = 0; c < cols; ++c) gain += !covered[c] && candidates.defeats(r, c);
      if (gain > best_gain || (gain == best_gain && gain > 0 && total[r] > total[best])) {
        best = r;
        best_gain = gain;
      }
    }
    if (best == rows) break;
    picked.push_back(best);
    taken[best] = true;
    for (std::size_t c = 0; c < cols; ++c) covered[c] = covered[c] || candidates.defeats(best, c);
  }

  if (picked.size() < k) {
    std::vector<std::size_t> rest;
    for (std::size_t r = 0; r < rows; ++r) {
      if (!taken[r]) rest.push_back(r);
    }
    std::stable_sort(rest.begin(), rest.end(), [&](std::size_t a, std::size_t b) {
      return candidates.mean_member_score(a) > candidates.mean_member_score(b);
    });
    for (std::size_t i = 0; picked.size() < k; ++i) picked.push_back(rest[i]);
  }
  return picked;
}

// k distinct indices drawn uniformly from [0, n), in draw order.
inline std::vector<std::size_t> random_sample(std::size_t n, std::size_t k, Rng& rng) {
  std::vector<std::size_t> pool(n);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  k = std::min(k, n);
  for (std::size_t i = 0; i < k; ++i) std::swap(pool[i], pool[i + rng.below(n - i)]);
  pool.resize(k);
  return pool;
}

}  // namespace coevo::ga

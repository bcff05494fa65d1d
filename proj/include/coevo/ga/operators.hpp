#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>

#include "coevo/ga/chromosome.hpp"
#include "coevo/rng.hpp"

namespace coevo::ga {

// One-point crossover at `cut`: child1 = a[0, cut) + b[cut, L), child2 the
// mirror image.
inline std::pair<BitChromosome, BitChromosome> crossover_at(const BitChromosome& a, const BitChromosome& b,
                                                            std::size_t cut) {
  if (a.size() != b.size()) throw std::invalid_argument("crossover of chromosomes with different lengths");
  BitChromosome c1 = a, c2 = b;
  for (std::size_t i = cut; i < a.size(); ++i) {
    c1.set(i, b[i]);
    c2.set(i, a[i]);
  }
  return {std::move(c1), std::move(c2)};
}

// With probability `rate`, cut uniformly in [1, L-1]; otherwise copy parents.
inline std::pair<BitChromosome, BitChromosome> crossover(const BitChromosome& a, const BitChromosome& b,
                                                         double rate, Rng& rng) {
  if (a.size() != b.size()) throw std::invalid_argument("crossover of chromosomes with different lengths");
  if (a.size() < 2 || !rng.bernoulli(rate)) return {a, b};
  return crossover_at(a, b, 1 + rng.below(a.size() - 1));
}

// Flips each bit independently with probability `rate`; returns the flip count.
inline std::size_t mutate(BitChromosome& c, double rate, Rng& rng) {
  std::size_t flips = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (rng.bernoulli(rate)) {
      c.flip(i);
      ++flips;
    }
  }
  return flips;
}

// Selection key: compared lexicographically, primary first.
struct FitnessKey {
  double primary = 0.0;
  double secondary = 0.0;
  auto operator<=>(const FitnessKey&) const = default;
};

// Index of the best key, lowest index on ties.
inline std::size_t best_index(std::span<const FitnessKey> keys) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < keys.size(); ++i) {
    if (keys[best] < keys[i]) best = i;
  }
  return best;
}

// Binary tournament: two uniform draws (with replacement), the better one
// wins, the first drawn on ties.
inline std::size_t tournament(std::span<const FitnessKey> keys, Rng& rng) {
  const std::size_t a = rng.below(keys.size());
  const std::size_t b = rng.below(keys.size());
  return keys[a] < keys[b] ? b : a;
}

}  // namespace coevo::ga

#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "coevo/ga/chromosome.hpp"
#include "coevo/parallel.hpp"
#include "coevo/sim/scenario.hpp"
#include "coevo/sim/skirmish.hpp"

namespace coevo::ga {

using sim::Side;
using sim::SkirmishResult;
using sim::Winner;

// Plays one skirmish between a red and a blue chromosome. Must be safe to
// call from several threads at once.
using MatchFn = std::function<SkirmishResult(const BitChromosome& red, const BitChromosome& blue)>;

// Decodes both chromosomes and runs the skirmish described by `cfg`. The
// config is copied into the closure.
inline MatchFn skirmish_match(sim::SkirmishConfig cfg, micro::RangeTable ranges) {
  return [cfg = std::move(cfg), ranges](const BitChromosome& red, const BitChromosome& blue) {
    const auto r = decode(red, ranges, cfg.rosters[0].size());
    const auto b = decode(blue, ranges, cfg.rosters[1].size());
    return sim::run_skirmish(cfg, r, b);
  };
}

// Wraps a match function and counts calls.
class CountingMatch {
 public:
  explicit CountingMatch(MatchFn inner) : inner_(std::move(inner)) {}

  SkirmishResult operator()(const BitChromosome& red, const BitChromosome& blue) const {
    calls_.fetch_add(1, std::memory_order_relaxed);
    return inner_(red, blue);
  }

  std::uint64_t calls() const { return calls_.load(); }

 private:
  MatchFn inner_;
  mutable std::atomic<std::uint64_t> calls_{0};
};

/// Outcomes of `members` (all on one side) against `opponents`.
///
/// Cell (m, o) holds the member's score, the opponent's score, and whether
/// either beat the other under the skirmish win rule. Draws credit nobody.
class EvaluationMatrix {
 public:
  EvaluationMatrix() = default;
  EvaluationMatrix(Side member_side, std::size_t members, std::size_t opponents)
      : side_(member_side), rows_(members), cols_(opponents), cells_(members * opponents) {}

  struct Entry {
    double member_score = 0.0;
    double opponent_score = 0.0;
    bool member_won = false;
    bool opponent_won = false;
  };

  Side member_side() const { return side_; }
  std::size_t members() const { return rows_; }
  std::size_t opponents() const { return cols_; }

  const Entry& at(std::size_t m, std::size_t o) const { return cells_[m * cols_ + o]; }
  bool defeats(std::size_t m, std::size_t o) const { return at(m, o).member_won; }
  bool defeated_by(std::size_t m, std::size_t o) const { return at(m, o).opponent_won; }

  void record(std::size_t m, std::size_t o, const SkirmishResult& r) {
    const Side opp = sim::opponent(side_);
    cells_[m * cols_ + o] = {r.score(side_), r.score(opp), r.winner == sim::winner_of(side_),
                             r.winner == sim::winner_of(opp)};
  }

  void set(std::size_t m, std::size_t o, Entry e) { cells_[m * cols_ + o] = e; }

  // Member's mean score, summed in opponent order.
  double mean_member_score(std::size_t m) const {
    if (cols_ == 0) return 0.0;
    double sum = 0.0;
    for (std::size_t o = 0; o < cols_; ++o) sum += at(m, o).member_score;
    return sum / static_cast<double>(cols_);
  }

  // Opponent's mean score over all members, summed in member order.
  double mean_opponent_score(std::size_t o) const {
    if (rows_ == 0) return 0.0;
    double sum = 0.0;
    for (std::size_t m = 0; m < rows_; ++m) sum += at(m, o).opponent_score;
    return sum / static_cast<double>(rows_);
  }

  // The same skirmishes seen from the opponents' side.
  EvaluationMatrix transposed() const {
    EvaluationMatrix t(sim::opponent(side_), cols_, rows_);
    for (std::size_t m = 0; m < rows_; ++m) {
      for (std::size_t o = 0; o < cols_; ++o) {
        const Entry& e = at(m, o);
        t.set(o, m, {e.opponent_score, e.member_score, e.opponent_won, e.member_won});
      }
    }
    return t;
  }

 private:
  Side side_ = Side::red;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Entry> cells_;
};

/// Every member against every opponent, in parallel. Member chromosomes play
/// the side given by `member_side`.
template <typename Match>
EvaluationMatrix evaluate_matrix(Side member_side, std::span<const BitChromosome> members,
                                 std::span<const BitChromosome> opponents, const Match& match,
                                 unsigned workers) {
  EvaluationMatrix out(member_side, members.size(), opponents.size());
  const std::size_t cols = opponents.size();
  std::vector<SkirmishResult> results(members.size() * cols);
  parallel_for(results.size(), workers, [&](std::size_t i) {
    const BitChromosome& m = members[i / cols];
    const BitChromosome& o = opponents[i % cols];
    results[i] = member_side == Side::red ? match(m, o) : match(o, m);
  });
  for (std::size_t i = 0; i < results.size(); ++i) out.record(i / cols, i % cols, results[i]);
  return out;
}

/// Full p x p round robin. Rows are red members, columns blue members; red
/// fitness is the row mean of red scores, blue fitness the column mean of
/// blue scores.
template <typename Match>
EvaluationMatrix evaluate_pairwise(std::span<const BitChromosome> red, std::span<const BitChromosome> blue,
                                   const Match& match, unsigned workers) {
  return evaluate_matrix(Side::red, red, blue, match, workers);
}

}  // namespace coevo::ga

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "coevo/errors.hpp"
#include "coevo/ga/chromosome.hpp"
#include "coevo/ga/evaluation.hpp"
#include "coevo/ga/hall_of_fame.hpp"
#include "coevo/ga/operators.hpp"
#include "coevo/ga/sharing.hpp"
#include "coevo/parallel.hpp"
#include "coevo/rng.hpp"

namespace coevo::ga {

enum class Mode { simple, enhanced };

inline const char* to_string(Mode m) { return m == Mode::simple ? "simple" : "enhanced"; }

inline Mode parse_mode(std::string_view s) {
  if (s == "simple") return Mode::simple;
  if (s == "enhanced") return Mode::enhanced;
  throw ConfigError("unknown coevolution mode '" + std::string(s) + "'");
}

struct CoevolutionSettings {
  std::size_t population_size = 50;
  double crossover_rate = 0.95;
  double mutation_rate = 0.03;
  Mode mode = Mode::enhanced;
  std::size_t sample_size = 5;
  std::size_t hof_size = 5;
  SharingMode sharing = SharingMode::win_credit;
  unsigned workers = 1;

  void validate() const {
    if (population_size < 2) throw ConfigError("population_size must be >= 2");
    if (!(crossover_rate >= 0.0 && crossover_rate <= 1.0)) throw ConfigError("crossover_rate must be in [0, 1]");
    if (!(mutation_rate >= 0.0 && mutation_rate <= 1.0)) throw ConfigError("mutation_rate must be in [0, 1]");
    if (mode == Mode::enhanced && sample_size == 0) throw ConfigError("sample_size must be >= 1");
  }
};

struct Population {
  std::vector<BitChromosome> members;
  int generation = 0;
};

struct GenerationReport {
  int generation = 0;
  std::uint64_t evaluations = 0;        // skirmishes played this generation
  std::uint64_t total_evaluations = 0;  // including this generation
  std::array<std::size_t, 2> champion_index{0, 0};
  std::array<BitChromosome, 2> champions;
  std::array<FitnessKey, 2> champion_fitness;
  std::array<std::vector<FitnessKey>, 2> fitness;
  std::array<std::size_t, 2> opponent_count{0, 0};  // per member; enhanced mode only
};

// Skirmishes one generation costs: simple mode plays the full round robin,
// enhanced mode plays each member against its sample and the opposing hall
// of fame.
inline std::uint64_t planned_evaluations(Mode mode, std::size_t p, std::array<std::size_t, 2> sample,
                                         std::array<std::size_t, 2> hof) {
  if (mode == Mode::simple) return static_cast<std::uint64_t>(p) * p;
  return static_cast<std::uint64_t>(p) * (sample[0] + hof[1]) + static_cast<std::uint64_t>(p) * (sample[1] + hof[0]);
}

/// Two populations evolved against each other; red chromosomes play the red
/// side of every skirmish.
class Coevolution {
 public:
  Coevolution(CoevolutionSettings settings, MatchFn match, std::array<std::size_t, 2> chromosome_bits,
              std::uint64_t seed)
      : settings_(std::move(settings)),
        match_(std::move(match)),
        bits_(chromosome_bits),
        breed_rng_{Rng(derive_seed(seed, "breed/red")), Rng(derive_seed(seed, "breed/blue"))},
        sample_rng_(derive_seed(seed, "sample")),
        hof_{HallOfFame(settings_.hof_size), HallOfFame(settings_.hof_size)} {
    settings_.validate();
    for (Side s : {Side::red, Side::blue}) {
      Rng init(derive_seed(seed, std::string("init/") + sim::to_string(s)));
      auto& members = pop_[sim::index(s)].members;
      for (std::size_t i = 0; i < settings_.population_size; ++i) {
        members.push_back(BitChromosome::random(bits_[sim::index(s)], init));
      }
    }
  }

  const CoevolutionSettings& settings() const { return settings_; }
  const Population& population(Side s) const { return pop_[sim::index(s)]; }
  const HallOfFame& hall_of_fame(Side s) const { return hof_[sim::index(s)]; }
  int generation() const { return generation_; }
  std::uint64_t total_evaluations() const { return total_evaluations_; }

  // Evaluates the current generation, records champions and breeds the next.
  GenerationReport step() {
    GenerationReport rep;
    rep.generation = generation_;
    std::array<EvaluationMatrix, 2> matrices;

    if (settings_.mode == Mode::simple) {
      matrices[0] = evaluate_pairwise(pop_[0].members, pop_[1].members, match_, settings_.workers);
      matrices[1] = matrices[0].transposed();
      for (std::size_t s = 0; s < 2; ++s) rep.fitness[s] = raw_keys(matrices[s]);
      rep.evaluations = matrices[0].members() * matrices[0].opponents();
    } else {
      std::array<std::vector<BitChromosome>, 2> opponents{opponents_for(Side::red), opponents_for(Side::blue)};
      for (std::size_t s = 0; s < 2; ++s) {
        matrices[s] = evaluate_matrix(static_cast<Side>(s), pop_[s].members, opponents[s], match_,
                                      settings_.workers);
        rep.fitness[s] = shared_keys(matrices[s], settings_.sharing);
        rep.opponent_count[s] = opponents[s].size();
        rep.evaluations += matrices[s].members() * matrices[s].opponents();
      }
    }

    for (std::size_t s = 0; s < 2; ++s) {
      rep.champion_index[s] = best_index(rep.fitness[s]);
      rep.champions[s] = pop_[s].members[rep.champion_index[s]];
      rep.champion_fitness[s] = rep.fitness[s][rep.champion_index[s]];
    }

    if (settings_.mode == Mode::enhanced) {
      for (std::size_t s = 0; s < 2; ++s) {
        hof_[s].push(rep.champions[s]);
        prev_members_[s] = pop_[s].members;
        prev_matrix_[s] = std::move(matrices[s]);
      }
    }

    for (std::size_t s = 0; s < 2; ++s) {
      pop_[s].members = breed(pop_[s].members, rep.fitness[s], rep.champion_index[s], breed_rng_[s]);
      pop_[s].generation = generation_ + 1;
    }
    ++generation_;
    total_evaluations_ += rep.evaluations;
    rep.total_evaluations = total_evaluations_;
    return rep;
  }

  // Opponents `side` faces this generation: the shared sample drawn from the
  // opposing population's previous generation (uniform at generation 0),
  // followed by the opposing hall of fame.
  std::vector<BitChromosome> opponents_for(Side side) {
    const std::size_t o = sim::index(sim::opponent(side));
    std::vector<BitChromosome> out;
    if (prev_matrix_[o]) {
      for (std::size_t r : build_shared_sample(*prev_matrix_[o], settings_.sample_size)) {
        out.push_back(prev_members_[o][r]);
      }
    } else {
      for (std::size_t r : random_sample(pop_[o].members.size(), settings_.sample_size, sample_rng_)) {
        out.push_back(pop_[o].members[r]);
      }
    }
    for (std::size_t h = 0; h < hof_[o].size(); ++h) out.push_back(hof_[o][h]);
    return out;
  }

 private:
  std::vector<BitChromosome> breed(const std::vector<BitChromosome>& members, const std::vector<FitnessKey>& keys,
                                   std::size_t champion, Rng& rng) const {
    std::vector<BitChromosome> next;
    next.reserve(members.size());
    next.push_back(members[champion]);
    while (next.size() < members.size()) {
      const auto& a = members[tournament(keys, rng)];
      const auto& b = members[tournament(keys, rng)];
      auto [c1, c2] = crossover(a, b, settings_.crossover_rate, rng);
      mutate(c1, settings_.mutation_rate, rng);
      mutate(c2, settings_.mutation_rate, rng);
      next.push_back(std::move(c1));
      if (next.size() < members.size()) next.push_back(std::move(c2));
    }
    return next;
  }

  CoevolutionSettings settings_;
  MatchFn match_;
  std::array<std::size_t, 2> bits_;
  std::array<Rng, 2> breed_rng_;
  Rng sample_rng_;
  std::array<Population, 2> pop_;
  std::array<HallOfFame, 2> hof_;
  std::array<std::vector<BitChromosome>, 2> prev_members_;
  std::array<std::optional<EvaluationMatrix>, 2> prev_matrix_;
  int generation_ = 0;
  std::uint64_t total_evaluations_ = 0;
};

}  // namespace coevo::ga

#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "coevo/errors.hpp"
#include "coevo/ga/chromosome.hpp"
#include "coevo/harness/baseline.hpp"
#include "coevo/harness/progress.hpp"
#include "coevo/harness/robustness.hpp"
#include "coevo/io/config.hpp"
#include "coevo/io/csv.hpp"

namespace coevo::io {

using sim::Side;

inline void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path.string() + "'");
  out << text;
}

inline std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// progress.csv

inline const std::vector<std::string>& progress_header() {
  static const std::vector<std::string> h = {
      "generation",         "mode",                "evaluations",         "total_evaluations",
      "red_fitness",        "red_mean_score",      "blue_fitness",        "blue_mean_score",
      "red_vs_baseline",    "red_baseline_score",  "blue_vs_baseline",    "blue_baseline_score"};
  return h;
}

inline std::vector<std::string> progress_row(const harness::ProgressRecord& r) {
  return {std::to_string(r.generation),
          ga::to_string(r.mode),
          std::to_string(r.evaluations),
          std::to_string(r.total_evaluations),
          fmt(r.champion_fitness[0].primary),
          fmt(r.champion_fitness[0].secondary),
          fmt(r.champion_fitness[1].primary),
          fmt(r.champion_fitness[1].secondary),
          fmt(r.vs_baseline[0].champion),
          fmt(r.vs_baseline[0].baseline),
          fmt(r.vs_baseline[1].champion),
          fmt(r.vs_baseline[1].baseline)};
}

inline std::string progress_csv(const std::vector<harness::ProgressRecord>& records) {
  std::string out = join_csv(progress_header()) + "\n";
  for (const auto& r : records) out += join_csv(progress_row(r)) + "\n";
  return out;
}

// Genome listing: one "name value" line per parameter, prefixed by the unit
// type when a side carries several genomes.

inline std::string format_genomes(const std::string& prefix, const std::vector<micro::MicroGenome>& genomes,
                                  const std::vector<std::string>& type_names) {
  std::string out;
  for (std::size_t g = 0; g < genomes.size(); ++g) {
    for (std::size_t p = 0; p < micro::kParamCount; ++p) {
      out += prefix + "." + type_names[g] + "." + std::string(micro::kParamNames[p]) + " " + fmt(genomes[g][p]) + "\n";
    }
  }
  return out;
}

inline std::vector<std::string> roster_type_names(const sim::SkirmishConfig& cfg, Side s) {
  std::vector<std::string> names;
  for (const auto& e : cfg.rosters[sim::index(s)]) names.push_back(cfg.unit_types[e.type_index].name);
  return names;
}

// champions/gen_####.txt: both champions of a generation and the outcome of
// their head-to-head skirmish in the training formation.
struct ChampionFile {
  int generation = 0;
  std::array<ga::BitChromosome, 2> champions;
  std::string pair_record;
  std::uint64_t pair_hash = 0;
};

inline std::string format_champion_file(const ChampionFile& f, const RunConfig& cfg) {
  std::string out = "generation " + std::to_string(f.generation) + "\n";
  for (Side s : {Side::red, Side::blue}) {
    const auto& c = f.champions[sim::index(s)];
    out += std::string(sim::to_string(s)) + " " + c.to_hex() + "\n";
    out += format_genomes(sim::to_string(s), ga::decode(c, cfg.ranges, cfg.skirmish.rosters[sim::index(s)].size()),
                          roster_type_names(cfg.skirmish, s));
  }
  out += "pair.result " + f.pair_record + "\n";
  out += "pair.result_hash " + hex64(f.pair_hash) + "\n";
  return out;
}

inline ChampionFile parse_champion_file(const std::string& text, const RunConfig& cfg) {
  ChampionFile f;
  const auto bits = cfg.chromosome_bits();
  bool have[2] = {false, false}, have_hash = false;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto sp = line.find(' ');
    if (sp == std::string::npos) continue;
    const std::string key = line.substr(0, sp), value = line.substr(sp + 1);
    if (key == "generation") {
      f.generation = std::stoi(value);
    } else if (key == "red" || key == "blue") {
      const std::size_t s = key == "red" ? 0 : 1;
      f.champions[s] = ga::BitChromosome::from_hex(value, bits[s]);
      have[s] = true;
    } else if (key == "pair.result") {
      f.pair_record = value;
    } else if (key == "pair.result_hash") {
      f.pair_hash = std::stoull(value, nullptr, 16);
      have_hash = true;
    }
  }
  if (!have[0] || !have[1] || !have_hash) throw ConfigError("champion file is missing a chromosome or result hash");
  return f;
}

inline std::string champion_file_name(int generation) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "gen_%04d.txt", generation);
  return buf;
}

// baseline.json

inline nlohmann::json to_json(const harness::BaselineRecord& b) {
  return {{"side", sim::to_string(b.side)},
          {"chromosome", b.chromosome.to_hex()},
          {"win_rate", b.win_rate},
          {"opponent_count", b.opponent_count},
          {"candidate_count", b.candidate_count},
          {"seed", b.seed},
          {"threshold", b.threshold},
          {"passed", b.passed},
          {"outcomes", b.outcomes}};
}

inline std::string format_baselines(const harness::BaselinePair& p, std::uint64_t cfg_hash) {
  nlohmann::json j = {{"config_hash", hex64(cfg_hash)},
                      {"red", to_json(p[Side::red])},
                      {"blue", to_json(p[Side::blue])}};
  return j.dump(2) + "\n";
}

// Reads baseline.json and checks every stored win rate against its outcomes.
inline harness::BaselinePair parse_baselines(const std::string& text, const RunConfig& cfg) {
  harness::BaselinePair p;
  const auto bits = cfg.chromosome_bits();
  try {
    const auto j = nlohmann::json::parse(text);
    for (Side s : {Side::red, Side::blue}) {
      const auto& b = j.at(sim::to_string(s));
      auto& r = p[s];
      r.side = s;
      r.chromosome = ga::BitChromosome::from_hex(b.at("chromosome").get<std::string>(), bits[sim::index(s)]);
      r.win_rate = b.at("win_rate").get<double>();
      r.opponent_count = b.at("opponent_count").get<int>();
      r.candidate_count = b.at("candidate_count").get<int>();
      r.seed = b.at("seed").get<std::uint64_t>();
      r.threshold = b.at("threshold").get<double>();
      r.passed = b.at("passed").get<bool>();
      r.outcomes = b.at("outcomes").get<std::string>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed baseline file: ") + e.what());
  }
  for (Side s : {Side::red, Side::blue}) {
    if (harness::win_rate(p[s].outcomes) != p[s].win_rate) {
      throw ConfigError(std::string(sim::to_string(s)) + " baseline win rate does not match its outcomes");
    }
  }
  return p;
}

// robustness.csv: one row per skirmish, then one summary row per formation
// (seed "all", winner column holding the champion's win count).

inline std::string robustness_csv(const std::vector<harness::RobustnessReport>& reports) {
  std::string out = "side,kind,formation,seed,champion_score,baseline_score,winner\n";
  for (const auto& rep : reports) {
    const std::string side = sim::to_string(rep.champion_side);
    for (const auto& e : rep.entries) {
      out += join_csv({side, "entry", harness::to_string(e.formation), std::to_string(e.seed), fmt(e.champion_score),
                       fmt(e.baseline_score), sim::to_string(e.winner)}) +
             "\n";
    }
    for (const auto& s : rep.summaries) {
      out += join_csv({side, "summary", harness::to_string(s.formation), "all", fmt(s.mean_champion),
                       fmt(s.mean_baseline), std::to_string(s.champion_wins)}) +
             "\n";
    }
  }
  return out;
}

// results.csv

inline std::string results_header() { return "config_hash,seed,score_red,score_blue,winner,frames\n"; }

inline std::string results_row(std::uint64_t cfg_hash, std::uint64_t seed, const sim::SkirmishResult& r) {
  return join_csv({hex64(cfg_hash), std::to_string(seed), fmt(r.score_red), fmt(r.score_blue),
                   sim::to_string(r.winner), std::to_string(r.frames_elapsed)}) +
         "\n";
}

// manifest.json

inline constexpr const char* kSoftwareVersion = "0.1.0";

struct Manifest {
  std::string verb;
  std::uint64_t config_hash = 0;
  std::uint64_t seed = 0;
  std::string started;
  std::string finished;
  std::vector<std::string> artifacts;  // relative to the output directory
};

inline nlohmann::json manifest_entry(const Manifest& m, const RunConfig& cfg) {
  return {{"config_hash", hex64(m.config_hash)},
          {"seed", m.seed},
          {"started", m.started},
          {"finished", m.finished},
          {"software_version", kSoftwareVersion},
          {"artifacts", m.artifacts},
          {"config", to_json(cfg)}};
}

// manifest.json holds one entry per verb run in the directory; running a verb
// again replaces its entry.
inline void update_manifest(const std::filesystem::path& path, const Manifest& m, const RunConfig& cfg) {
  nlohmann::json j = nlohmann::json::object();
  if (std::filesystem::exists(path)) {
    try {
      j = nlohmann::json::parse(read_text(path));
    } catch (const nlohmann::json::exception&) {
      j = nlohmann::json::object();
    }
  }
  j[m.verb] = manifest_entry(m, cfg);
  write_text(path, j.dump(2) + "\n");
}

}  // namespace coevo::io

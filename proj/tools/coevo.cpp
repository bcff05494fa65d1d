// coevo: baseline search, coevolution runs, robustness reports and replays.

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "coevo/ga/coevolution.hpp"
#include "coevo/harness/baseline.hpp"
#include "coevo/harness/progress.hpp"
#include "coevo/harness/robustness.hpp"
#include "coevo/io/artifacts.hpp"
#include "coevo/io/config.hpp"
#include "coevo/sim/replay.hpp"

namespace fs = std::filesystem;
using namespace coevo;
using sim::Side;

namespace {

struct Options {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  unsigned workers = default_worker_count();
  std::optional<std::string> mode;
  std::optional<std::string> out;
  std::string champion;
  std::string baseline;
};

std::string now_utc() {
  const std::time_t t = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

io::RunConfig effective_config(const Options& o) {
  io::RunConfig cfg = o.config_path.empty() ? io::parse_config(io::json::object()) : io::load_config(o.config_path);
  if (o.seed) cfg.seed = *o.seed;
  if (o.mode) cfg.ga.mode = ga::parse_mode(*o.mode);
  if (o.out) cfg.output = *o.out;
  cfg.ga.workers = o.workers;
  return cfg;
}

harness::BaselinePair load_baselines(const Options& o, const io::RunConfig& cfg) {
  const fs::path path = o.baseline.empty() ? fs::path(cfg.output) / "baseline.json" : fs::path(o.baseline);
  if (!fs::exists(path)) {
    throw ConfigError("no baseline at '" + path.string() + "'; run `coevo baseline` with the same config first");
  }
  return io::parse_baselines(io::read_text(path), cfg);
}

io::ChampionFile load_champion(const Options& o, const io::RunConfig& cfg) {
  if (o.champion.empty()) throw ConfigError("--champion FILE is required (a champions/gen_####.txt file)");
  if (!fs::exists(o.champion)) throw ConfigError("champion file '" + o.champion + "' does not exist");
  return io::parse_champion_file(io::read_text(o.champion), cfg);
}

void finish(const std::string& verb, const io::RunConfig& cfg, const std::string& started,
            std::vector<std::string> artifacts) {
  io::Manifest m{verb, io::config_hash(cfg), cfg.seed, started, now_utc(), std::move(artifacts)};
  const fs::path dir(cfg.output);
  for (const auto& a : m.artifacts) {
    if (!fs::exists(dir / a)) throw std::runtime_error("artifact '" + a + "' was not written");
  }
  io::update_manifest(dir / "manifest.json", m, cfg);
}

int run_baseline(const Options& o) {
  const auto started = now_utc();
  const io::RunConfig cfg = effective_config(o);
  const auto match = ga::skirmish_match(cfg.skirmish, cfg.ranges);
  const double gate = cfg.baseline.gate(cfg.scenario.kind);
  harness::BaselinePair pair;
  for (Side s : {Side::red, Side::blue}) {
    pair[s] = harness::build_baseline(s, cfg.baseline.random_opponents, cfg.baseline.candidates, match,
                                      cfg.chromosome_bits(), gate, cfg.seed, cfg.ga.workers);
    std::printf("%s baseline: win rate %.4f over %d opponents (gate %.2f) %s\n", sim::to_string(s),
                pair[s].win_rate, pair[s].opponent_count, gate, pair[s].passed ? "ok" : "BELOW GATE");
  }
  io::write_text(fs::path(cfg.output) / "baseline.json", io::format_baselines(pair, io::config_hash(cfg)));
  finish("baseline", cfg, started, {"baseline.json"});
  return pair[Side::red].passed && pair[Side::blue].passed ? 0 : 3;
}

int run_coevolve(const Options& o) {
  const auto started = now_utc();
  const io::RunConfig cfg = effective_config(o);
  const auto baselines = load_baselines(o, cfg);
  const auto match = ga::skirmish_match(cfg.skirmish, cfg.ranges);
  const fs::path dir(cfg.output);
  const std::uint64_t hash = io::config_hash(cfg);

  ga::Coevolution run(cfg.ga, match, cfg.chromosome_bits(), cfg.seed);
  std::vector<harness::ProgressRecord> records;
  std::string timing = "generation,seconds\n";
  std::string results = io::results_header();
  std::vector<std::string> artifacts = {"progress.csv", "timing.csv", "results.csv"};

  for (int g = 0; g < cfg.generations; ++g) {
    const auto t0 = std::chrono::steady_clock::now();
    const ga::GenerationReport rep = run.step();
    records.push_back(harness::measure_progress(rep, cfg.ga.mode, baselines, match));

    const sim::SkirmishResult pair = match(rep.champions[0], rep.champions[1]);
    io::ChampionFile cf{rep.generation, rep.champions, sim::to_record(pair), sim::result_hash(pair)};
    const std::string name = "champions/" + io::champion_file_name(rep.generation);
    io::write_text(dir / name, io::format_champion_file(cf, cfg));
    artifacts.push_back(name);
    results += io::results_row(hash, cfg.seed, pair);

    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    timing += std::to_string(rep.generation) + "," + io::fmt(secs) + "\n";
    const auto& r = records.back();
    std::printf("gen %3d  evals %7llu  red vs baseline %10.1f  blue vs baseline %10.1f  (%.1fs)\n", rep.generation,
                static_cast<unsigned long long>(rep.total_evaluations), r.vs_baseline[0].champion,
                r.vs_baseline[1].champion, secs);
    std::fflush(stdout);
    // Rewritten every generation so an interrupted run keeps its history.
    io::write_text(dir / "progress.csv", io::progress_csv(records));
    io::write_text(dir / "timing.csv", timing);
    io::write_text(dir / "results.csv", results);
  }
  finish("coevolve", cfg, started, artifacts);
  return 0;
}

int run_robustness(const Options& o) {
  const auto started = now_utc();
  const io::RunConfig cfg = effective_config(o);
  const auto champion = load_champion(o, cfg);
  const auto baselines = load_baselines(o, cfg);
  std::vector<harness::RobustnessReport> reports;
  for (Side s : {Side::red, Side::blue}) {
    reports.push_back(harness::robustness_eval(s, champion.champions[sim::index(s)],
                                               baselines[sim::opponent(s)].chromosome, cfg.skirmish, cfg.ranges,
                                               harness::kAllFormations, cfg.start_sets, cfg.ga.workers));
    for (const auto& sum : reports.back().summaries) {
      std::printf("%s champion, %-6s: mean score %10.1f (baseline %10.1f), wins %d/%d\n", sim::to_string(s),
                  harness::to_string(sum.formation), sum.mean_champion, sum.mean_baseline, sum.champion_wins,
                  sum.count);
    }
  }
  io::write_text(fs::path(cfg.output) / "robustness.csv", io::robustness_csv(reports));
  finish("robustness", cfg, started, {"robustness.csv"});
  return 0;
}

int run_replay(const Options& o) {
  const auto started = now_utc();
  const io::RunConfig cfg = effective_config(o);
  const auto champion = load_champion(o, cfg);
  const auto red = ga::decode(champion.champions[0], cfg.ranges, cfg.skirmish.rosters[0].size());
  const auto blue = ga::decode(champion.champions[1], cfg.ranges, cfg.skirmish.rosters[1].size());
  sim::ReplayTrace trace;
  const sim::SkirmishResult r = sim::run_skirmish(cfg.skirmish, red, blue, &trace);
  const fs::path dir(cfg.output);
  {
    fs::create_directories(dir);
    std::ofstream out(dir / "replay.trace");
    sim::write_trace(out, trace);
  }
  const bool same = sim::result_hash(r) == champion.pair_hash;
  std::printf("replayed generation %d: %s\nresult hash %s (%s)\n", champion.generation, sim::to_record(r).c_str(),
              io::hex64(sim::result_hash(r)).c_str(), same ? "matches" : "MISMATCH");
  finish("replay", cfg, started, {"replay.trace"});
  return same ? 0 : 4;
}

int run_inspect(const Options& o) {
  const io::RunConfig cfg = effective_config(o);
  if (o.champion.empty()) {
    std::printf("%s\nconfig hash %s\n", io::to_json(cfg).dump(2).c_str(), io::hex64(io::config_hash(cfg)).c_str());
    return 0;
  }
  const auto champion = load_champion(o, cfg);
  std::printf("generation %d\n", champion.generation);
  for (Side s : {Side::red, Side::blue}) {
    const auto& c = champion.champions[sim::index(s)];
    std::printf("%s %s\n%s", sim::to_string(s), c.to_hex().c_str(),
                io::format_genomes(sim::to_string(s),
                                   ga::decode(c, cfg.ranges, cfg.skirmish.rosters[sim::index(s)].size()),
                                   io::roster_type_names(cfg.skirmish, s))
                    .c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Competitive coevolution of RTS micro parameters"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", o.config_path, "JSON run config (defaults when omitted)")->check(CLI::ExistingFile);
    cmd->add_option("--seed", o.seed, "master seed (overrides the config)");
    cmd->add_option("--workers", o.workers, "worker threads")->check(CLI::PositiveNumber);
    cmd->add_option("--mode", o.mode, "simple or enhanced")->check(CLI::IsMember({"simple", "enhanced"}));
    cmd->add_option("--out", o.out, "output directory (overrides the config)");
    cmd->add_option("--baseline", o.baseline, "baseline file (default OUT/baseline.json)");
  };

  auto* baseline = app.add_subcommand("baseline", "search for baseline players on both sides");
  auto* coevolve = app.add_subcommand("coevolve", "run coevolution, measuring champions against the baselines");
  auto* robustness = app.add_subcommand("robustness", "play stored champions against baselines in all formations");
  auto* replay = app.add_subcommand("replay", "re-simulate a stored champion pair and write its trace");
  auto* inspect = app.add_subcommand("inspect", "print the effective config or a decoded champion file");
  for (auto* cmd : {baseline, coevolve, robustness, replay, inspect}) add_common(cmd);
  for (auto* cmd : {robustness, replay, inspect}) cmd->add_option("--champion", o.champion, "champions/gen_####.txt");

  CLI11_PARSE(app, argc, argv);

  try {
    if (baseline->parsed()) return run_baseline(o);
    if (coevolve->parsed()) return run_coevolve(o);
    if (robustness->parsed()) return run_robustness(o);
    if (replay->parsed()) return run_replay(o);
    if (inspect->parsed()) return run_inspect(o);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 2;
}

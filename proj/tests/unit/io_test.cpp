#include <gtest/gtest.h>

#include <filesystem>
#include <limits>

#include "coevo/io/artifacts.hpp"
#include "coevo/io/config.hpp"
#include "coevo/io/csv.hpp"

using namespace coevo;
using namespace coevo::io;

namespace {

std::string config_error(const json& j) {
  try {
    parse_config(j);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Config, EmptyDocumentGivesDefaults) {
  const RunConfig c = parse_config(json::object());
  EXPECT_EQ(c.ga.population_size, 50u);
  EXPECT_EQ(c.ga.crossover_rate, 0.95);
  EXPECT_EQ(c.ga.mutation_rate, 0.03);
  EXPECT_EQ(c.ga.mode, ga::Mode::enhanced);
  EXPECT_EQ(c.ga.sample_size, 5u);
  EXPECT_EQ(c.ga.hof_size, 5u);
  EXPECT_EQ(c.start_sets, 10);
  EXPECT_EQ(c.skirmish.unit_count(Side::red), 5);
  EXPECT_EQ(c.skirmish.unit_count(Side::blue), 25);
  EXPECT_EQ(c.baseline.gate(c.scenario.kind), 0.90);
  EXPECT_EQ(c.chromosome_bits(), (std::array<std::size_t, 2>{96, 96}));
}

TEST(Config, TwoTypeScenarioUsesMixedRostersAndStricterGate) {
  const RunConfig c = parse_config(json::parse(R"({"scenario": {"kind": "two-type", "vultures": 3, "zealots": 6}})"));
  EXPECT_EQ(c.chromosome_bits(), (std::array<std::size_t, 2>{192, 192}));
  EXPECT_EQ(c.skirmish.unit_count(Side::blue), 9);
  EXPECT_EQ(c.baseline.gate(c.scenario.kind), 0.99);
}

TEST(Config, OutOfRangeValueNamesTheField) {
  const auto msg = config_error(json::parse(R"({"ga": {"crossover_rate": 1.5}})"));
  EXPECT_NE(msg.find("ga.crossover_rate"), std::string::npos) << msg;
}

TEST(Config, UnknownKeyIsRejected) {
  EXPECT_NE(config_error(json::parse(R"({"ga": {"popsize": 10}})")).find("ga.popsize: unknown key"), std::string::npos);
  EXPECT_NE(config_error(json::parse(R"({"colour": 1})")).find("colour"), std::string::npos);
  EXPECT_NE(config_error(json::parse(R"({"skirmish": {"formation": {"shape": 1}}})")).find("skirmish.formation.shape"),
            std::string::npos);
}

TEST(Config, WrongTypeAndBadEnumsAreRejected) {
  EXPECT_NE(config_error(json::parse(R"({"ga": {"population_size": "many"}})")).find("ga.population_size"),
            std::string::npos);
  EXPECT_NE(config_error(json::parse(R"({"ga": {"mode": "fast"}})")).find("ga.mode"), std::string::npos);
  EXPECT_NE(config_error(json::parse(R"({"ranges": {"kite_wait": [5, 1]}})")).find("ranges.kite_wait"),
            std::string::npos);
  EXPECT_FALSE(config_error(json::parse(R"({"skirmish": {"unit_types": {"zealot": {"move_speed": 0}}}})")).empty());
}

TEST(Config, CanonicalFormRoundTrips) {
  const RunConfig c = parse_config(json::parse(
      R"({"ga": {"population_size": 8, "mode": "simple", "sharing": "score"}, "seed": 9,
          "skirmish": {"max_frames": 100, "formation": {"kind": "line"}}, "baseline": {"threshold": 0.5}})"));
  const RunConfig back = parse_config(to_json(c));
  EXPECT_EQ(to_json(back), to_json(c));
  EXPECT_EQ(config_hash(back), config_hash(c));
  EXPECT_EQ(back.ga.mode, ga::Mode::simple);
  EXPECT_EQ(back.ga.sharing, ga::SharingMode::score);
  EXPECT_EQ(back.skirmish.formation.kind, harness::FormationKind::line);
}

TEST(Config, HashIgnoresOutputOnly) {
  RunConfig a = parse_config(json::object()), b = a;
  b.output = "elsewhere";
  EXPECT_EQ(config_hash(a), config_hash(b));
  b.seed = 1;
  EXPECT_NE(config_hash(a), config_hash(b));
}

TEST(Csv, NumbersRoundTripExactly) {
  for (double v : {0.0, 1.0 / 3.0, 258000.0, 1e-300, -2.5, std::numeric_limits<double>::max()}) {
    EXPECT_EQ(std::stod(fmt(v)), v);
  }
  EXPECT_EQ(fmt(0.5), "0.5");
}

TEST(Csv, ParseJoinRoundTrip) {
  const std::string text = "a,b,c\n1,,x\n2,3,\n";
  const CsvTable t = parse_csv(text);
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.at(0, "b"), "");
  EXPECT_EQ(t.at(1, "c"), "");
  EXPECT_EQ(t.number(1, "b"), 3.0);
  std::string out = join_csv(t.header) + "\n";
  for (const auto& r : t.rows) out += join_csv(r) + "\n";
  EXPECT_EQ(out, text);
  EXPECT_THROW(parse_csv("a,b\n1\n"), ConfigError);
  EXPECT_THROW(t.column("z"), ConfigError);
}

TEST(ProgressCsv, OneRowPerGenerationWithHeaderWidth) {
  harness::ProgressRecord r;
  r.generation = 3;
  r.evaluations = 400;
  r.total_evaluations = 1200;
  r.vs_baseline[0] = {12.5, 3.0, sim::Winner::red};
  const CsvTable t = parse_csv(progress_csv({r, r}));
  EXPECT_EQ(t.header, progress_header());
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.number(0, "red_vs_baseline"), 12.5);
  EXPECT_EQ(t.at(1, "mode"), "enhanced");
  EXPECT_EQ(t.number(1, "total_evaluations"), 1200);
}

TEST(ChampionFile, RoundTrips) {
  const RunConfig cfg = parse_config(json::parse(R"({"scenario": {"kind": "two-type", "vultures": 2, "zealots": 3}})"));
  Rng rng(1);
  ChampionFile f;
  f.generation = 17;
  f.champions = {ga::BitChromosome::random(192, rng), ga::BitChromosome::random(192, rng)};
  f.pair_record = "red 1 2 draw";
  f.pair_hash = 0xdeadbeefcafef00dull;
  const std::string text = format_champion_file(f, cfg);
  EXPECT_NE(text.find("red.vulture.influence_weight "), std::string::npos);
  EXPECT_NE(text.find("blue.zealot.flee_hitpoints "), std::string::npos);
  const ChampionFile back = parse_champion_file(text, cfg);
  EXPECT_EQ(back.generation, 17);
  EXPECT_EQ(back.champions, f.champions);
  EXPECT_EQ(back.pair_record, f.pair_record);
  EXPECT_EQ(back.pair_hash, f.pair_hash);
  EXPECT_EQ(champion_file_name(7), "gen_0007.txt");
  EXPECT_THROW(parse_champion_file("generation 1\n", cfg), ConfigError);
}

TEST(BaselineFile, RoundTripsAndChecksWinRate) {
  const RunConfig cfg = parse_config(json::object());
  harness::BaselinePair p;
  for (Side s : {Side::red, Side::blue}) {
    auto& b = p[s];
    b.side = s;
    b.chromosome = ga::BitChromosome(96, s == Side::red);
    b.outcomes = "WWDL";
    b.win_rate = harness::win_rate(b.outcomes);
    b.opponent_count = 4;
    b.candidate_count = 2;
    b.threshold = 0.5;
    b.passed = true;
  }
  const std::string text = format_baselines(p, config_hash(cfg));
  const auto back = parse_baselines(text, cfg);
  EXPECT_EQ(back[Side::red].chromosome, p[Side::red].chromosome);
  EXPECT_EQ(back[Side::blue].win_rate, 0.625);

  auto j = json::parse(text);
  j["blue"]["win_rate"] = 0.75;
  EXPECT_THROW(parse_baselines(j.dump(), cfg), ConfigError);
  EXPECT_THROW(parse_baselines("{", cfg), ConfigError);
}

TEST(RobustnessCsv, EntryAndSummaryRows) {
  harness::RobustnessReport rep;
  rep.champion_side = Side::blue;
  rep.entries = {{harness::FormationKind::circle, 1, 4.0, 2.0, sim::Winner::blue},
                 {harness::FormationKind::circle, 2, 6.0, 1.0, sim::Winner::red}};
  rep.summaries = harness::summarize(rep.entries, Side::blue);
  const CsvTable t = parse_csv(robustness_csv({rep}));
  ASSERT_EQ(t.rows.size(), 3u);
  EXPECT_EQ(t.at(2, "kind"), "summary");
  EXPECT_EQ(t.at(2, "seed"), "all");
  EXPECT_EQ(t.number(2, "champion_score"), 5.0);
  EXPECT_EQ(t.at(2, "winner"), "1");
}

TEST(Manifest, EntriesAreKeyedByVerb) {
  const auto dir = std::filesystem::temp_directory_path() / "coevo_io_test";
  std::filesystem::remove_all(dir);
  const RunConfig cfg = parse_config(json::object());
  update_manifest(dir / "manifest.json", {"baseline", config_hash(cfg), 1, "a", "b", {"baseline.json"}}, cfg);
  update_manifest(dir / "manifest.json", {"coevolve", config_hash(cfg), 1, "c", "d", {"progress.csv"}}, cfg);
  update_manifest(dir / "manifest.json", {"baseline", config_hash(cfg), 2, "e", "f", {"baseline.json"}}, cfg);
  const auto j = json::parse(read_text(dir / "manifest.json"));
  EXPECT_EQ(j.size(), 2u);
  EXPECT_EQ(j["baseline"]["seed"], 2);
  EXPECT_EQ(j["coevolve"]["software_version"], kSoftwareVersion);
  EXPECT_EQ(j["coevolve"]["config_hash"], hex64(config_hash(cfg)));
  std::filesystem::remove_all(dir);
}

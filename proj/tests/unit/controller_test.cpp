#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "coevo/micro/controller.hpp"
#include "coevo/micro/potential_field.hpp"
#include "coevo/sim/scenario.hpp"
#include "coevo/sim/skirmish.hpp"
#include "helpers.hpp"

using namespace coevo;
using namespace coevo::micro;
using namespace testing_helpers;
using sim::Side;

namespace {

const std::vector<UnitTypeSpec> kTypes = {sim::vulture(), sim::zealot()};

UnitState make(int id, Side side, int type, Vec2 pos, int hp) {
  UnitState u;
  u.unit_id = id;
  u.side = side;
  u.type_index = type;
  u.position = pos;
  u.hitpoints = hp;
  u.kite_waypoint = pos;
  return u;
}

WorldView view_of(const std::vector<UnitState>& enemies, const std::vector<UnitState>& friends, Vec2 target) {
  return WorldView{enemies, friends, kTypes, target, ControllerSettings{}, nullptr};
}

}  // namespace

TEST(PotentialField, UnitDistanceCancelsExponents) {
  EXPECT_EQ(pf_force(3.0, 1.7, 5.0, -2.2, 1.0), 8.0);
}

TEST(PotentialField, DirectSubstitution) {
  EXPECT_EQ(pf_force(2, 1, 0, 0, 3), 6.0);
  EXPECT_EQ(pf_force(1, 2, 4, -1, 2), 6.0);
}

TEST(PotentialField, ZeroDistanceIsClamped) {
  EXPECT_EQ(pf_force(0, 0, 1, -1, 0.0), 2.0);
  EXPECT_TRUE(std::isfinite(pf_force(1, 1, 64, -3, 0.0)));
}

TEST(PotentialField, MonotoneInCoefficients) {
  for (double d : {0.7, 1.0, 5.0, 300.0}) {
    double prev = -1.0;
    for (double c = 0; c <= 64; c += 4) {
      const double f = pf_force(c, 1.3, 2.0, -1.5, d);
      EXPECT_GT(f, prev);
      prev = f;
    }
  }
}

TEST(GroupMove, AtTargetWithoutFriendsIsStill) {
  EXPECT_EQ(group_move_vector({100, 100}, 6.4, {100, 100}, std::span<const Vec2>{}, fighter_genome()), (Vec2{}));
}

TEST(GroupMove, PullPointsAtTargetAndIsClamped) {
  MicroGenome g;
  g.set(Param::attract_coeff, 2).set(Param::attract_exp, 0.5);
  const Vec2 slow = group_move_vector({100, 100}, 6.4, {104, 100}, std::span<const Vec2>{}, g);
  EXPECT_DOUBLE_EQ(slow.x, 4.0);
  EXPECT_EQ(slow.y, 0.0);
  const Vec2 fast = group_move_vector({100, 100}, 6.4, {900, 100}, std::span<const Vec2>{}, g);
  EXPECT_DOUBLE_EQ(fast.x, 6.4);
  EXPECT_EQ(fast.y, 0.0);
}

TEST(GroupMove, SymmetricFriendsCancel) {
  MicroGenome g = fighter_genome();
  g.set(Param::repel_coeff, 20).set(Param::repel_exp, -1);
  const std::vector<Vec2> friends{{100, 80}, {100, 120}};
  const Vec2 v = group_move_vector({100, 100}, 4.0, {500, 100}, friends, g);
  EXPECT_GT(v.x, 0.0);
  EXPECT_EQ(v.y, 0.0);
}

TEST(GroupMove, DistantFriendsDoNotRepel) {
  MicroGenome g;
  g.set(Param::repel_coeff, 20).set(Param::repel_exp, 0);
  const std::vector<Vec2> friends{{100, 400}};
  EXPECT_EQ(friend_repulsion({100, 100}, friends, g), (Vec2{}));
}

TEST(AttackTarget, NothingInRadius) {
  const auto self = make(0, Side::red, 0, {0, 0}, 80);
  const std::vector<UnitState> units{make(1, Side::blue, 1, {500, 0}, 160)};
  EXPECT_FALSE(choose_attack_target(self, units, 50, 100));
}

TEST(AttackTarget, WeakEnemyBelowThreshold) {
  const auto self = make(0, Side::red, 0, {0, 0}, 80);
  const std::vector<UnitState> units{make(1, Side::blue, 1, {10, 0}, 90), make(2, Side::blue, 1, {50, 0}, 30)};
  EXPECT_EQ(choose_attack_target(self, units, 50, 100), 1u);
}

TEST(AttackTarget, NearestWhenNoneIsWeak) {
  const auto self = make(0, Side::red, 0, {0, 0}, 80);
  const std::vector<UnitState> units{make(1, Side::blue, 1, {60, 0}, 90), make(2, Side::blue, 1, {50, 0}, 100)};
  EXPECT_EQ(choose_attack_target(self, units, 50, 100), 1u);
}

TEST(AttackTarget, EqualHitpointsGoToNearer) {
  const auto self = make(0, Side::red, 0, {0, 0}, 80);
  const std::vector<UnitState> units{make(1, Side::blue, 1, {60, 0}, 20), make(2, Side::blue, 1, {30, 0}, 20)};
  EXPECT_EQ(choose_attack_target(self, units, 50, 100), 1u);
}

TEST(Kite, DistantThreatDoesNotTrigger) {
  auto self = make(0, Side::red, 0, {100, 100}, 80);
  self.kite_timer = 10;
  self.cooldown_remaining = 20;
  EXPECT_FALSE(kite_decision(self, 6.4, Vec2{400, 100}, kiter_genome(), {2048, 2048}));
}

TEST(Kite, ZeroKiteBackExitsImmediately) {
  auto self = make(0, Side::red, 0, {100, 100}, 80);
  self.kite_timer = 10;
  self.cooldown_remaining = 20;
  MicroGenome g = kiter_genome();
  g.set(Param::kite_back, 0);
  const auto d = kite_decision(self, 6.4, Vec2{150, 100}, g, {2048, 2048});
  ASSERT_TRUE(d);
  EXPECT_EQ(d->mode, sim::BehaviorMode::engage);
  EXPECT_EQ(d->command.move, (Vec2{}));
}

TEST(Kite, WaitsThenRetreatsAfterFiring) {
  // One vulture against one idle zealot 100 units east. The vulture fires at
  // frame 0 and must stand still through frame 4, then move west at frame 5.
  const auto cfg = duel_config();
  MicroGenome g = fighter_genome();
  g.set(Param::kite_distance, 200).set(Param::kite_wait, 5).set(Param::kite_back, 96);
  auto s = sim::spawn_at(cfg, one(g), one(idle_genome()), positions({{1000, 1000}}, {{1100, 1000}}));

  std::vector<Vec2> pos{s.units[0].position};
  std::vector<bool> fired;
  for (int f = 0; f < 8; ++f) {
    sim::step(s);
    pos.push_back(s.units[0].position);
    fired.push_back(!s.shots.empty());
  }
  EXPECT_TRUE(fired[0]);
  for (int f = 0; f <= 4; ++f) EXPECT_EQ(pos[f + 1], pos[f]) << "frame " << f;
  EXPECT_LT(pos[6].x, pos[5].x);
  EXPECT_EQ(s.units[0].mode, sim::BehaviorMode::kite_retreat);
  for (int f = 1; f < 8; ++f) EXPECT_FALSE(fired[f]);
}

TEST(Kite, RetreatEndsAtWaypoint) {
  auto self = make(0, Side::red, 0, {100, 100}, 80);
  self.mode = sim::BehaviorMode::kite_retreat;
  self.kite_waypoint = {104, 100};
  const auto d = kite_decision(self, 6.4, std::nullopt, kiter_genome(), {2048, 2048});
  ASSERT_TRUE(d);
  EXPECT_EQ(d->mode, sim::BehaviorMode::engage);
  EXPECT_EQ(d->command.move, (Vec2{4, 0}));
}

TEST(Flee, ZeroThresholdNeverFlees) {
  const auto self = make(0, Side::red, 0, {0, 0}, 1);
  const std::vector<UnitState> enemies{make(1, Side::blue, 1, {5, 0}, 160)};
  EXPECT_FALSE(flee_decision(self, 6.4, enemies, idle_genome()));
}

TEST(Flee, FullHitpointsAtMaxThresholdDoNotFlee) {
  const auto self = make(0, Side::red, 0, {0, 0}, 80);
  MicroGenome g;
  g.set(Param::flee_hitpoints, 80);
  const std::vector<UnitState> enemies{make(1, Side::blue, 1, {5, 0}, 160)};
  EXPECT_FALSE(flee_decision(self, 6.4, enemies, g));
  auto hurt = self;
  hurt.hitpoints = 79;
  EXPECT_TRUE(flee_decision(hurt, 6.4, enemies, g));
}

TEST(Flee, MovesAwayFromThreatAtFullSpeed) {
  const auto self = make(0, Side::red, 0, {500, 500}, 10);
  MicroGenome g;
  g.set(Param::flee_hitpoints, 40);
  const std::vector<UnitState> enemies{make(1, Side::blue, 1, {400, 500}, 160)};
  const auto d = flee_decision(self, 6.4, enemies, g);
  ASSERT_TRUE(d);
  EXPECT_EQ(d->command.move, (Vec2{6.4, 0}));
  EXPECT_FALSE(d->command.attack_target);
  EXPECT_EQ(d->mode, sim::BehaviorMode::flee);
}

TEST(Flee, UsesCentroidOfEnemiesInRadius) {
  const auto self = make(0, Side::red, 0, {500, 500}, 10);
  MicroGenome g;
  g.set(Param::flee_hitpoints, 40).set(Param::target_radius, 200);
  const std::vector<UnitState> enemies{make(1, Side::blue, 1, {400, 400}, 160), make(2, Side::blue, 1, {400, 600}, 160),
                                       make(3, Side::blue, 1, {1500, 500}, 160)};
  const auto d = flee_decision(self, 6.4, enemies, g);
  ASSERT_TRUE(d);
  EXPECT_DOUBLE_EQ(d->command.move.x, 6.4);
  EXPECT_EQ(d->command.move.y, 0.0);
}

TEST(Decide, FleeOverridesAttack) {
  auto self = make(0, Side::red, 0, {500, 500}, 10);
  MicroGenome g = fighter_genome();
  g.set(Param::flee_hitpoints, 40);
  const std::vector<UnitState> enemies{make(1, Side::blue, 1, {450, 500}, 160)};
  const auto d = decide_action(self, view_of(enemies, {self}, {0, 0}), g);
  EXPECT_EQ(d.mode, sim::BehaviorMode::flee);
  EXPECT_FALSE(d.command.attack_target);
}

TEST(Decide, ReadyRangedUnitAttacksInPlace) {
  const auto self = make(0, Side::red, 0, {500, 500}, 80);
  const std::vector<UnitState> enemies{make(7, Side::blue, 1, {600, 500}, 160)};
  const auto d = decide_action(self, view_of(enemies, {self}, {0, 0}), fighter_genome());
  EXPECT_EQ(d.command.attack_target, 7);
  EXPECT_EQ(d.command.move, (Vec2{}));
}

TEST(Decide, NoEnemyInRadiusMovesTowardTarget) {
  const auto self = make(0, Side::red, 0, {500, 500}, 80);
  const std::vector<UnitState> enemies{make(7, Side::blue, 1, {1500, 500}, 160)};
  const auto d = decide_action(self, view_of(enemies, {self}, {1400, 500}), fighter_genome(100));
  EXPECT_EQ(d.mode, sim::BehaviorMode::approach);
  EXPECT_FALSE(d.command.attack_target);
  EXPECT_DOUBLE_EQ(d.command.move.x, 6.4);
}

TEST(Decide, CommandsStayWithinSpeedAndRange) {
  Rng rng(21);
  for (int trial = 0; trial < 300; ++trial) {
    const auto g = random_genomes(1, rng)[0];
    std::vector<UnitState> enemies, friends;
    auto self = make(0, Side::red, static_cast<int>(rng.below(2)), {rng.uniform(0, 600), rng.uniform(0, 600)},
                     1 + static_cast<int>(rng.below(80)));
    self.cooldown_remaining = static_cast<int>(rng.below(3));
    self.kite_timer = static_cast<int>(rng.below(20)) - 1;
    friends.push_back(self);
    for (int i = 0; i < 4; ++i) {
      friends.push_back(make(1 + i, Side::red, 0, {rng.uniform(0, 600), rng.uniform(0, 600)}, 80));
      enemies.push_back(make(10 + i, Side::blue, 1, {rng.uniform(0, 600), rng.uniform(0, 600)},
                             static_cast<int>(rng.below(161))));
    }
    const auto d = decide_action(self, view_of(enemies, friends, {300, 300}), g);
    const auto& type = kTypes[self.type_index];
    EXPECT_LE(d.command.move.length(), type.move_speed + 1e-9);
    if (d.command.attack_target) {
      const auto& t = enemies[*d.command.attack_target - 10];
      EXPECT_TRUE(t.alive());
      EXPECT_LE(distance(t.position, self.position), type.attack_range);
      EXPECT_EQ(self.cooldown_remaining, 0);
    }
  }
}

TEST(Repulsion, PairwiseSumMatchesPerUnitSum) {
  auto cfg = sim::one_type_scenario(5, 10);
  Rng rng(8);
  const auto red = random_genomes(1, rng), blue = random_genomes(1, rng);
  auto s = sim::spawn_skirmish(cfg, red, blue);
  for (int f = 0; f < 40 && !sim::is_terminal(s); ++f) {
    sim::step(s);
    for (Side side : {Side::red, Side::blue}) {
      auto& live = s.live_units[sim::index(side)];
      live.clear();
      for (const auto& u : s.units) {
        if (u.side == side && u.alive()) live.push_back(u);
      }
    }
    const auto settings = cfg.controller_settings().group;
    sim::compute_repulsion(s, settings);
    for (const auto& u : s.units) {
      if (!u.alive()) continue;
      const auto expect = repulsion_sum(u, s.live_units[sim::index(u.side)], s.genomes[sim::index(u.side)][0], settings);
      EXPECT_EQ(s.repulsion[u.unit_id], expect);
    }
  }
}

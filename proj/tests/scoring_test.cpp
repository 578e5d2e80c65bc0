#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "test_support.hpp"
#include "tradeopt/errors.hpp"
#include "tradeopt/oracle.hpp"
#include "tradeopt/scoring.hpp"

namespace tradeopt {
namespace {

using testing::flat_player;
using testing::roster;

TEST(OptimalLineupTest, OnePlayerPerDedicatedSlot) {
  const Roster r = roster("A", {flat_player("qb", Position::QB, 20), flat_player("rb1", Position::RB, 10),
                                flat_player("rb2", Position::RB, 8), flat_player("wr1", Position::WR, 12),
                                flat_player("wr2", Position::WR, 9), flat_player("te", Position::TE, 7),
                                flat_player("k", Position::K, 8), flat_player("dst", Position::DST, 6)});
  EXPECT_DOUBLE_EQ(optimal_lineup_score(r, 10, FreeAgentCeilings{}), 80.0);
}

TEST(OptimalLineupTest, EmptyRosterUsesCeilings) {
  EXPECT_DOUBLE_EQ(optimal_lineup_score(roster("A", {}), 10, FreeAgentCeilings::uniform(5.0)), 45.0);
}

TEST(OptimalLineupTest, ThirdRunningBackTakesFlex) {
  const Roster r = roster("A", {flat_player("qb", Position::QB, 18), flat_player("rb1", Position::RB, 14),
                                flat_player("rb2", Position::RB, 11), flat_player("rb3", Position::RB, 9),
                                flat_player("wr1", Position::WR, 13), flat_player("wr2", Position::WR, 10),
                                flat_player("te", Position::TE, 6), flat_player("k", Position::K, 7),
                                flat_player("dst", Position::DST, 5)});
  EXPECT_DOUBLE_EQ(optimal_lineup_score(r, 10, FreeAgentCeilings{}), 93.0);
  EXPECT_DOUBLE_EQ(oracle::brute_force_lineup(r, 10, FreeAgentCeilings{}), 93.0);
}

TEST(OptimalLineupTest, CeilingReplacesWeakStarterAndFillsFlex) {
  FreeAgentCeilings c;
  c.set(Position::QB, 10, 15.0);
  c.set(Position::TE, 10, 4.0);
  const Roster r = roster("A", {flat_player("qb", Position::QB, 12), flat_player("te", Position::TE, 9)});
  // QB ceiling beats the rostered QB; TE plays; FLEX takes the TE ceiling.
  EXPECT_DOUBLE_EQ(optimal_lineup_score(r, 10, c), 15.0 + 9.0 + 4.0);
}

TEST(OptimalLineupTest, RejectsWeekOutsideSeason) {
  EXPECT_THROW(optimal_lineup_score(roster("A", {}), 0, {}), ValidationError);
  EXPECT_THROW(optimal_lineup_score(roster("A", {}), 19, {}), ValidationError);
}

// Exact agreement with exhaustive slot assignment. Values sit on a 1/64 grid
// so every summation order is exact.
TEST(OptimalLineupTest, MatchesBruteForceOnRandomRosters) {
  std::mt19937_64 gen(12345);
  std::uniform_int_distribution<std::size_t> size(0, 15);
  for (int i = 0; i < 1000; ++i) {
    const Roster r = testing::random_roster(gen, "R", size(gen), 10, 10);
    const FreeAgentCeilings c = testing::random_ceilings(gen, 12.0);
    ASSERT_EQ(optimal_lineup_score(r, 10, c), oracle::brute_force_lineup(r, 10, c)) << "roster " << i;
  }
}

TEST(OptimalLineupTest, CloseToBruteForceOnArbitraryDecimals) {
  std::mt19937_64 gen(99);
  std::uniform_real_distribution<double> pts(0.0, 30.0);
  std::uniform_int_distribution<int> pos(0, 5);
  for (int i = 0; i < 300; ++i) {
    Roster r = roster("R", {});
    for (int j = 0; j < 12; ++j) {
      r.players.push_back(flat_player("p" + std::to_string(j), kAllPositions[static_cast<std::size_t>(pos(gen))],
                                      pts(gen)));
    }
    FreeAgentCeilings c;
    for (Position p : kAllPositions) c.set(p, 5, pts(gen) / 3);
    EXPECT_NEAR(optimal_lineup_score(r, 5, c), oracle::brute_force_lineup(r, 5, c), 1e-9);
  }
}

TEST(SeasonScoreTest, SumsWindowWeeks) {
  const Roster empty = roster("A", {});
  const LeagueSnapshot two_weeks = testing::two_team_league(empty, roster("B", {}), 16, 17, {16, 17},
                                                            FreeAgentCeilings::uniform(5.0));
  EXPECT_DOUBLE_EQ(season_score(empty, two_weeks), 90.0);

  std::mt19937_64 gen(5);
  const Roster r = testing::random_roster(gen, "A", 14, 1, 18);
  const LeagueSnapshot single = testing::two_team_league(r, roster("B", {}), 17, 17, {17});
  EXPECT_DOUBLE_EQ(season_score(r, single), optimal_lineup_score(r, 17, single.ceilings()));

  const LeagueSnapshot full = testing::two_team_league(r, roster("B", {}), 8, 17);
  double by_week = 0.0;
  for (int w = 8; w <= 17; ++w) by_week += oracle::brute_force_lineup(r, w, full.ceilings());
  EXPECT_EQ(season_score(r, full), by_week);
}

TEST(WeightVectorTest, RegularWeightConservesMass) {
  const LeagueSnapshot s = testing::two_team_league(roster("A", {}), roster("B", {}), 8, 17);
  const WeightVector wv = weight_vector(s, 1.2);
  EXPECT_EQ(wv.playoff_weeks_remaining, 3);
  EXPECT_EQ(wv.regular_weeks_remaining, 7);
  EXPECT_NEAR(wv.regular_weight, 6.4 / 7.0, 1e-12);
  EXPECT_NEAR(wv.regular_weight, 0.9142857, 1e-7);
  EXPECT_DOUBLE_EQ(wv.at(15), 1.2);
  EXPECT_DOUBLE_EQ(wv.at(8), wv.regular_weight);
  EXPECT_NEAR(wv.total(), 10.0, 1e-9);
}

TEST(WeightVectorTest, UnitPlayoffWeightIsIdentity) {
  const LeagueSnapshot s = testing::two_team_league(roster("A", {}), roster("B", {}), 3, 17);
  const WeightVector wv = weight_vector(s, 1.0);
  for (double w : wv.weights) EXPECT_DOUBLE_EQ(w, 1.0);
}

TEST(WeightVectorTest, OnlyPlayoffWeeksLeftGivesUnitWeights) {
  const LeagueSnapshot s = testing::two_team_league(roster("A", {}), roster("B", {}), 15, 17);
  const WeightVector wv = weight_vector(s, 1.5);
  EXPECT_EQ(wv.regular_weeks_remaining, 0);
  ASSERT_EQ(wv.weights.size(), 3u);
  for (double w : wv.weights) EXPECT_DOUBLE_EQ(w, 1.0);
}

TEST(WeightVectorTest, RejectsNonPositivePlayoffWeight) {
  const LeagueSnapshot s = testing::two_team_league(roster("A", {}), roster("B", {}));
  EXPECT_THROW(weight_vector(s, 0.0), ValidationError);
  EXPECT_THROW(weight_vector(s, -1.0), ValidationError);
}

TEST(WeightVectorTest, MassConservedForRandomWindows) {
  std::mt19937_64 gen(2024);
  for (int i = 0; i < 500; ++i) {
    const int first = std::uniform_int_distribution<int>(1, 17)(gen);
    std::set<int> playoffs;
    for (int w = first; w <= 17; ++w) {
      if (std::bernoulli_distribution(0.3)(gen)) playoffs.insert(w);
    }
    const LeagueSnapshot s =
        testing::two_team_league(roster("A", {}), roster("B", {}), first, 17, playoffs);
    const double ap = std::uniform_real_distribution<double>(0.05, 3.0)(gen);
    const WeightVector wv = weight_vector(s, ap);
    if (wv.regular_weeks_remaining > 0) EXPECT_NEAR(wv.total(), 18 - first, 1e-9);
  }
}

TEST(WeightedGainTest, PlayoffBiasIsMonotone) {
  const LeagueSnapshot s = testing::two_team_league(roster("A", {}), roster("B", {}), 8, 17);
  WeeklyGains gains{8, {1, 2, 1, 0.5, 1, 2, 1, 5, 6, 4}};  // playoff weeks larger
  double previous = -1e300;
  for (double ap = 0.5; ap <= 2.5; ap += 0.1) {
    const double g = weighted_gain(gains, weight_vector(s, ap));
    EXPECT_GT(g, previous);
    previous = g;
  }
}

TEST(TradeCostTest, FormulaExamples) {
  EXPECT_DOUBLE_EQ(trade_cost(10, 10, 1, 1, 0.25), -20.0);
  // Table row: weighted user gain 15.633 and opponent gain 15.06.
  EXPECT_NEAR(trade_cost(15.633, 15.06, 1, 1, 0.25), -30.55, 0.01);
  // The printed unweighted gain does not reproduce the printed cost.
  EXPECT_GT(std::abs(trade_cost(14.32, 15.06, 1, 1, 0.25) - (-30.55)), 1.0);
}

// User is deep at WR and has no RB; opponent is the mirror image.
LeagueSnapshot depth_swap_league() {
  return testing::two_team_league(
      roster("A", {flat_player("a1", Position::WR, 10), flat_player("a2", Position::WR, 9),
                   flat_player("a3", Position::WR, 8), flat_player("a4", Position::WR, 7)}),
      roster("B", {flat_player("b1", Position::RB, 10), flat_player("b2", Position::RB, 9),
                   flat_player("b3", Position::RB, 8), flat_player("b4", Position::RB, 6)}));
}

TEST(EvaluateTradeTest, ConstantWeeklyGainsKeepWeightedGainUnchanged) {
  const LeagueSnapshot s = depth_swap_league();
  const EngineConfig config;
  const TradeEvaluation ev = evaluate_trade(Trade("B", {"a4"}, {"b4"}), s, config);
  for (int w = 8; w <= 17; ++w) {
    EXPECT_DOUBLE_EQ(ev.weekly_gain_a.at(w), 6.0);
    EXPECT_DOUBLE_EQ(ev.weekly_gain_b.at(w), 7.0);
  }
  EXPECT_DOUBLE_EQ(ev.gain_a, 60.0);
  EXPECT_DOUBLE_EQ(ev.gain_b, 70.0);
  EXPECT_NEAR(ev.weighted_gain_a, ev.gain_a, 1e-9);
  EXPECT_TRUE(ev.feasible);
  EXPECT_NEAR(ev.cost, -(60.0 + 70.0 - 0.25 * 10.0), 1e-9);
}

TEST(EvaluateTradeTest, InfeasibleTradeStillHasCost) {
  const LeagueSnapshot s = depth_swap_league();
  // Two starting WRs for the worst RB hurts the user.
  const TradeEvaluation ev = evaluate_trade(Trade("B", {"a1", "a2"}, {"b4"}), s, EngineConfig{});
  EXPECT_LT(ev.gain_a, 0.0);
  EXPECT_FALSE(ev.feasible);
  EXPECT_TRUE(std::isfinite(ev.cost));
}

TEST(EvaluateTradeTest, IdenticalPlayersSwapToZero) {
  const LeagueSnapshot s = testing::two_team_league(
      roster("A", {flat_player("a1", Position::RB, 10)}), roster("B", {flat_player("b1", Position::RB, 10)}));
  const TradeEvaluation ev = evaluate_trade(Trade("B", {"a1"}, {"b1"}), s, EngineConfig{});
  EXPECT_EQ(ev.gain_a, 0.0);
  EXPECT_EQ(ev.gain_b, 0.0);
  EXPECT_FALSE(ev.feasible);
}

TEST(EvaluateTradeTest, RejectsUnresolvableIds) {
  const LeagueSnapshot s = depth_swap_league();
  try {
    evaluate_trade(Trade("B", {"b1"}, {"b2"}), s, EngineConfig{});
    FAIL();
  } catch (const UnknownPlayerError& e) {
    EXPECT_EQ(e.player_id(), "b1");
  }
  EXPECT_THROW(evaluate_trade(Trade("B", {"a1"}, {"nobody"}), s, EngineConfig{}), UnknownPlayerError);
  EXPECT_THROW(evaluate_trade(Trade("Z", {"a1"}, {"b1"}), s, EngineConfig{}), ValidationError);
  EXPECT_THROW(evaluate_trade(Trade("A", {"a1"}, {"a2"}), s, EngineConfig{}), ValidationError);
  EngineConfig one;
  one.max_players_per_side = 1;
  EXPECT_THROW(evaluate_trade(Trade("B", {"a1", "a2"}, {"b1"}), s, one), ValidationError);
}

TEST(EvaluateTradeTest, GainsSumWeeklyValues) {
  std::mt19937_64 gen(77);
  EngineConfig config;
  for (int i = 0; i < 100; ++i) {
    const LeagueSnapshot s = testing::two_team_league(testing::random_roster(gen, "A", 10, 8, 17),
                                                      testing::random_roster(gen, "B", 10, 8, 17));
    const Trade t("B", {"A-" + std::to_string(i % 10)}, {"B-" + std::to_string((i * 3) % 10), "B-" + std::to_string((i * 3 + 1) % 10)});
    const TradeEvaluation ev = evaluate_trade(t, s, config);
    EXPECT_NEAR(ev.gain_a, ev.weekly_gain_a.sum(), 1e-9);
    EXPECT_NEAR(ev.gain_b, ev.weekly_gain_b.sum(), 1e-9);
    EXPECT_EQ(ev.feasible, ev.gain_a > 0 && ev.gain_b > 0);
    // Purity: repeated evaluation is bit-identical.
    EXPECT_EQ(evaluate_trade(t, s, config), ev);
  }
}

TEST(EvaluateTradeTest, UnweightedGainMatchesSeasonScoreDifference) {
  std::mt19937_64 gen(8);
  const LeagueSnapshot s = testing::two_team_league(testing::random_roster(gen, "A", 12, 8, 17),
                                                    testing::random_roster(gen, "B", 12, 8, 17));
  const Trade t("B", {"A-1", "A-4"}, {"B-2"});
  const TradeEvaluation ev = evaluate_trade(t, s, EngineConfig{});
  Roster after_a = *s.find_team("A");
  Roster after_b = *s.find_team("B");
  auto move = [](Roster& from, Roster& to, const std::string& id) {
    auto it = std::find_if(from.players.begin(), from.players.end(),
                           [&](const PlayerProjection& p) { return p.player_id == id; });
    to.players.push_back(*it);
    from.players.erase(it);
  };
  move(after_a, after_b, "A-1");
  move(after_a, after_b, "A-4");
  move(after_b, after_a, "B-2");
  EXPECT_NEAR(ev.gain_a, season_score(after_a, s) - season_score(*s.find_team("A"), s), 1e-9);
  EXPECT_NEAR(ev.gain_b, season_score(after_b, s) - season_score(*s.find_team("B"), s), 1e-9);
}

TEST(EvaluateTradeTest, MirroredTradeSwapsGains) {
  std::mt19937_64 gen(31337);
  EngineConfig config;
  config.playoff_weight = 1.0;
  for (int i = 0; i < 100; ++i) {
    Roster a = testing::random_roster(gen, "A", 9, 8, 17);
    Roster b = testing::random_roster(gen, "B", 9, 8, 17);
    const FreeAgentCeilings c = testing::random_ceilings(gen, 6.0);
    const LeagueSnapshot as_a = testing::two_team_league(a, b, 8, 17, {15, 16, 17}, c);
    const LeagueSnapshot as_b = testing::two_team_league(b, a, 8, 17, {15, 16, 17}, c);
    const std::string give = "A-" + std::to_string(i % 9);
    const std::string get = "B-" + std::to_string((i * 5) % 9);
    const TradeEvaluation forward = evaluate_trade(Trade("B", {give}, {get}), as_a, config);
    const TradeEvaluation mirrored = evaluate_trade(Trade("A", {get}, {give}), as_b, config);
    EXPECT_EQ(forward.weekly_gain_a, mirrored.weekly_gain_b);
    EXPECT_EQ(forward.weekly_gain_b, mirrored.weekly_gain_a);
    EXPECT_EQ(forward.gain_a, mirrored.gain_b);
    EXPECT_EQ(forward.gain_b, mirrored.gain_a);
  }
}

}  // namespace
}  // namespace tradeopt

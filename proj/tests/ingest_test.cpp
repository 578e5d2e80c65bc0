#include <sstream>

#include <gtest/gtest.h>

#include "json.hpp"
#include "test_support.hpp"
#include "tradeopt/errors.hpp"
#include "tradeopt/ingest.hpp"
#include "tradeopt/scoring.hpp"

namespace tradeopt {
namespace {

using nlohmann::json;
using testing::flat_player;
using testing::roster;

json minimal_document() {
  return json::parse(R"({
    "version": 1,
    "league": {
      "user_team_id": "A",
      "current_week": 8,
      "teams": [
        {"team_id": "A", "team_name": "Alpha",
         "players": [{"player_id": "a1", "name": "Ann", "position": "QB",
                      "weekly_points": {"8": 20.5, "9": 18}}]},
        {"team_id": "B",
         "players": [{"player_id": "b1", "name": "Bo", "position": "D/ST",
                      "weekly_points": {"8": 7}}]}
      ]
    },
    "ceilings": {"QB": {"8": 0}, "RB": {}, "WR": {}, "TE": {}, "K": {}, "DST": {}}
  })");
}

ValidationError load_error(const json& doc) {
  try {
    load_snapshot(doc.dump());
  } catch (const ValidationError& e) {
    return e;
  }
  ADD_FAILURE() << "document accepted";
  return ValidationError("");
}

TEST(LoadSnapshotTest, MinimalDocument) {
  const LeagueSnapshot s = load_snapshot(minimal_document().dump());
  EXPECT_EQ(s.teams().size(), 2u);
  EXPECT_EQ(s.final_week(), 17);
  EXPECT_EQ(s.playoff_weeks(), (std::set<int>{15, 16, 17}));
  EXPECT_EQ(s.teams()[1].team_name, "B");
  EXPECT_EQ(s.find_player("b1")->position, Position::DST);
  EXPECT_DOUBLE_EQ(season_score(s.user_team(), s), 38.5);
}

TEST(LoadSnapshotTest, FreeAgentCeilingIsPositionWeekMaximum) {
  json doc = minimal_document();
  doc.erase("ceilings");
  doc["free_agents"] = json::parse(R"([
    {"player_id": "k1", "name": "Kick One", "position": "K", "weekly_points": {"10": 7.1}},
    {"player_id": "k2", "name": "Kick Two", "position": "K", "weekly_points": {"10": 9.4, "11": 2}}
  ])");
  const LeagueSnapshot s = load_snapshot(doc.dump());
  EXPECT_DOUBLE_EQ(s.ceilings().at(Position::K, 10), 9.4);
  EXPECT_DOUBLE_EQ(s.ceilings().at(Position::K, 11), 2.0);
  EXPECT_DOUBLE_EQ(s.ceilings().at(Position::K, 12), 0.0);
  EXPECT_DOUBLE_EQ(s.ceilings().at(Position::QB, 10), 0.0);
}

TEST(LoadSnapshotTest, CeilingSourceMustBeUnique) {
  json both = minimal_document();
  both["free_agents"] = json::array();
  EXPECT_EQ(load_error(both).path(), "/ceilings");

  json neither = minimal_document();
  neither.erase("ceilings");
  EXPECT_EQ(load_error(neither).path(), "/free_agents");
}

TEST(LoadSnapshotTest, RejectsOtherVersions) {
  json doc = minimal_document();
  doc["version"] = 2;
  const ValidationError e = load_error(doc);
  EXPECT_EQ(e.path(), "/version");
  EXPECT_NE(e.message().find("version 2"), std::string::npos);
}

TEST(LoadSnapshotTest, ErrorsCarryFieldPaths) {
  json unknown = minimal_document();
  unknown["league"]["teams"][0]["players"][0]["salary"] = 3;
  EXPECT_EQ(load_error(unknown).path(), "/league/teams/0/players/0/salary");

  json position = minimal_document();
  position["league"]["teams"][1]["players"][0]["position"] = "FLEX";
  EXPECT_EQ(load_error(position).path(), "/league/teams/1/players/0/position");

  json week = minimal_document();
  week["league"]["teams"][0]["players"][0]["weekly_points"]["08"] = 1;
  EXPECT_EQ(load_error(week).path(), "/league/teams/0/players/0/weekly_points/08");

  json range = minimal_document();
  range["league"]["teams"][0]["players"][0]["weekly_points"]["19"] = 1;
  EXPECT_EQ(load_error(range).path(), "/league/teams/0/players/0/weekly_points/19");

  json negative = minimal_document();
  negative["league"]["teams"][0]["players"][0]["weekly_points"]["9"] = -2;
  EXPECT_EQ(load_error(negative).path(), "/league/teams/0/players/0/weekly_points/9");

  json missing = minimal_document();
  missing["league"].erase("current_week");
  EXPECT_EQ(load_error(missing).path(), "/league/current_week");

  json ceiling_key = minimal_document();
  ceiling_key["ceilings"]["D/ST"] = json::object();
  EXPECT_EQ(load_error(ceiling_key).path(), "/ceilings/D/ST");

  EXPECT_THROW(load_snapshot("{not json"), ValidationError);
}

TEST(LoadSnapshotTest, DuplicatePlayerIdAcrossLeague) {
  json rostered = minimal_document();
  rostered["league"]["teams"][1]["players"][0]["player_id"] = "a1";
  const ValidationError e = load_error(rostered);
  EXPECT_NE(std::string(e.what()).find("a1"), std::string::npos);
  EXPECT_EQ(e.path(), "/league/teams/1/players/0/player_id");

  json free_agent = minimal_document();
  free_agent.erase("ceilings");
  free_agent["free_agents"] = json::parse(
      R"([{"player_id": "b1", "name": "Dup", "position": "RB", "weekly_points": {}}])");
  EXPECT_EQ(load_error(free_agent).path(), "/free_agents/0/player_id");
}

TEST(LoadSnapshotTest, MissingFileIsNotAValidationError) {
  try {
    load_snapshot_file("/nonexistent/league.json");
    FAIL();
  } catch (const ValidationError&) {
    FAIL() << "I/O failure reported as validation";
  } catch (const std::runtime_error&) {
  }
}

TEST(SaveSnapshotTest, FixturesRoundTrip) {
  for (const char* name : {"league12.json", "small_league.json"}) {
    const LeagueSnapshot s = load_snapshot_file(testing::fixture_path(name));
    const std::string saved = save_snapshot(s);
    const LeagueSnapshot again = load_snapshot(saved);
    EXPECT_EQ(again, s) << name;
    EXPECT_EQ(save_snapshot(again), saved) << name;
  }
}

TEST(SaveSnapshotTest, RandomSnapshotsRoundTrip) {
  std::mt19937_64 gen(31);
  for (int i = 0; i < 50; ++i) {
    const int first = std::uniform_int_distribution<int>(1, 17)(gen);
    const LeagueSnapshot s = testing::two_team_league(
        testing::random_roster(gen, "A", 10, 1, 18), testing::random_roster(gen, "B", 7, first, 17),
        first, 17, {16, 17}, testing::random_ceilings(gen, 9.0));
    EXPECT_EQ(load_snapshot(save_snapshot(s)), s);
  }
}

TEST(TradeCsvTest, EmptyResultIsHeaderOnly) {
  const LeagueSnapshot s = testing::two_team_league(roster("A", {}), roster("B", {}));
  EXPECT_EQ(export_trades_csv(RunResult{}, s),
            "Cost,Team A Pt Gain,Team B Pt Gain,Team A Players to Trade,Team B Players to Trade\n");
}

TEST(TradeCsvTest, FormatsTwoDecimals) {
  TradeTableRow row{"B", -20.0, 10.0, 10.0, {"Ann"}, {"Bo"}};
  EXPECT_EQ(trades_to_csv({row}), std::string(kTradeCsvHeader) + "\n-20.00,10.00,10.00,Ann,Bo\n");
  EXPECT_EQ(format_points(-0.001), "0.00");
  EXPECT_EQ(format_points(2.005), "2.00");  // 2.005 is stored below the midpoint
  EXPECT_EQ(format_points(-3.14159), "-3.14");
}

TEST(TradeCsvTest, QuotesFieldsThatNeedIt) {
  TradeTableRow row{"B", -1, 1, 1, {"Ann", "Bea"}, {"Said \"Bo\""}};
  EXPECT_EQ(trades_to_csv({row}),
            std::string(kTradeCsvHeader) + "\n-1.00,1.00,1.00,\"Ann, Bea\",\"Said \"\"Bo\"\"\"\n");
}

// The first row of the published author's-team table, with the evaluation
// seeded by hand since its projections are not available.
TEST(TradeCsvTest, PublishedRowGolden) {
  const LeagueSnapshot s = testing::two_team_league(
      roster("A", {testing::flat_player("gainwell", Position::RB, 9),
                   testing::flat_player("vidal", Position::RB, 8),
                   testing::flat_player("bowers", Position::TE, 12),
                   testing::flat_player("herbert", Position::QB, 18)}),
      roster("B", {testing::flat_player("maye", Position::QB, 19),
                   testing::flat_player("warren", Position::TE, 10)}));
  std::vector<Roster> teams = s.teams();
  teams[0].players[0].name = "Kenneth Gainwell";
  teams[0].players[1].name = "Kimani Vidal";
  teams[0].players[2].name = "Brock Bowers";
  teams[0].players[3].name = "Justin Herbert";
  teams[1].players[0].name = "Drake Maye";
  teams[1].players[1].name = "Tyler Warren";
  const LeagueSnapshot named("A", teams, 8, 17, {15, 16, 17}, {});

  TradeEvaluation ev;
  ev.gain_a = 14.32;
  ev.gain_b = 15.06;
  ev.weighted_gain_a = 15.633;
  ev.cost = trade_cost(ev.weighted_gain_a, ev.gain_b, 1.0, 1.0, 0.25);
  ev.feasible = true;
  RunResult result;
  result.final_population.individuals = {
      Individual{Trade("B", {"bowers", "vidal", "gainwell"}, {"warren", "maye"}), ev}};

  EXPECT_EQ(export_trades_csv(result, named),
            std::string(kTradeCsvHeader) +
                "\n-30.55,14.32,15.06,\"Kenneth Gainwell, Kimani Vidal, Brock Bowers\","
                "\"Drake Maye, Tyler Warren\"\n");
}

// Minimal RFC 4180 reader for the parse-back check.
std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows(1);
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') {
        field.push_back('"');
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      rows.back().push_back(std::move(field));
      field.clear();
    } else if (c == '\n') {
      rows.back().push_back(std::move(field));
      field.clear();
      rows.emplace_back();
    } else {
      field.push_back(c);
    }
  }
  rows.pop_back();
  return rows;
}

TEST(TradeCsvTest, RowsParseBackWithinRounding) {
  const LeagueSnapshot s = load_snapshot_file(testing::fixture_path("small_league.json"));
  EngineConfig config;
  config.max_players_per_side = 2;
  config.generations = 30;
  config.rng_seed = 17;
  const RunResult result = run(s, config);
  ASSERT_FALSE(result.final_population.individuals.empty());
  const auto rows = parse_csv(export_trades_csv(result, s));
  const auto expected = trade_table_rows(result, s);
  ASSERT_EQ(rows.size(), expected.size() + 1);
  EXPECT_EQ(rows[0].size(), 5u);
  double previous = -1e300;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    const auto& r = rows[i + 1];
    ASSERT_EQ(r.size(), 5u);
    EXPECT_NEAR(std::stod(r[0]), expected[i].cost, 0.005 + 1e-12);
    EXPECT_NEAR(std::stod(r[1]), expected[i].gain_a, 0.005 + 1e-12);
    EXPECT_NEAR(std::stod(r[2]), expected[i].gain_b, 0.005 + 1e-12);
    EXPECT_GE(expected[i].cost, previous);
    previous = expected[i].cost;
  }
}

}  // namespace
}  // namespace tradeopt

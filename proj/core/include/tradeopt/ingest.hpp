#pragma once

// Snapshot documents and trade-table export.
//
// Snapshot document, version 1 (JSON; unknown fields are rejected):
//
//   {
//     "version": 1,
//     "league": {
//       "user_team_id": "T1",
//       "current_week": 8,
//       "final_week": 17,                 // optional, default 17
//       "playoff_weeks": [15, 16, 17],    // optional, default {15,16,17} up to final_week
//       "teams": [
//         { "team_id": "T1", "team_name": "Mine",
//           "players": [
//             { "player_id": "p1", "name": "Some Back", "position": "RB",
//               "weekly_points": { "8": 12.5, "9": 0.0 } } ] } ]
//     },
//     "free_agents": [ <player>, ... ]          // either this ...
//     "ceilings": { "RB": { "8": 9.1 }, ... }   // ... or this, never both
//   }
//
// Week keys are decimal strings of integers in [1, 18]; missing weeks are
// 0.0. With "free_agents" the ceiling for (position, week) is the best free
// agent projection at that position for that week.

#include <string>
#include <string_view>
#include <vector>

#include "tradeopt/domain.hpp"
#include "tradeopt/engine.hpp"

namespace tradeopt {

inline constexpr int kSnapshotVersion = 1;

// Throws ValidationError whose path() points at the offending field.
LeagueSnapshot load_snapshot(std::string_view document);
// Throws std::runtime_error when the file cannot be read.
LeagueSnapshot load_snapshot_file(const std::string& path);

// Canonical document with explicit ceilings; load_snapshot(save_snapshot(s)) == s.
std::string save_snapshot(const LeagueSnapshot& snapshot);

struct TradeTableRow {
  std::string opponent_team_id;
  double cost = 0.0;
  double gain_a = 0.0;  // unweighted
  double gain_b = 0.0;
  std::vector<std::string> giving_names;     // user's roster order
  std::vector<std::string> receiving_names;  // opponent's roster order
};

inline constexpr std::string_view kTradeCsvHeader =
    "Cost,Team A Pt Gain,Team B Pt Gain,Team A Players to Trade,Team B Players to Trade";

TradeTableRow make_table_row(const Individual& individual, const LeagueSnapshot& snapshot);
// Rows for the final population, ranked by ascending cost.
std::vector<TradeTableRow> trade_table_rows(const RunResult& result, const LeagueSnapshot& snapshot);

// Two-decimal rendering with negative zero normalized to "0.00".
std::string format_points(double value);

std::string trades_to_csv(const std::vector<TradeTableRow>& rows);
std::string export_trades_csv(const RunResult& result, const LeagueSnapshot& snapshot);

}  // namespace tradeopt

#pragma once

// JSON shapes shared by the HTTP service and the CLI's --format json output.

#include <optional>
#include <set>
#include <string>

#include "json.hpp"
#include "tradeopt/config.hpp"
#include "tradeopt/domain.hpp"
#include "tradeopt/engine.hpp"

namespace tradeopt::wire {

using nlohmann::json;

// Engine settings plus an optional playoff-week override, as accepted by
// POST /runs and POST /evaluate:
//   { "preset": "fairness", "alpha": 1.0, ..., "playoff_weeks": [15, 16, 17] }
// The preset applies first, then the explicit fields. Unknown fields are
// rejected; paths are reported relative to `path`.
struct RunSettings {
  EngineConfig config;
  std::optional<std::set<int>> playoff_weeks;
};
RunSettings settings_from_json(const json& j, const std::string& path);
json config_to_json(const EngineConfig& config);

// {"opponent_team_id": "T2", "giving": [...], "receiving": [...]}
Trade trade_from_json(const json& j, const std::string& path);

json weekly_to_json(const WeeklyGains& gains);
json evaluation_to_json(const TradeEvaluation& evaluation);
// Trade ids, display names in roster order, and the full evaluation.
json individual_to_json(const Individual& individual, const LeagueSnapshot& snapshot);

json league_summary(const LeagueSnapshot& snapshot);

}  // namespace tradeopt::wire

#include "tradeopt/wire.hpp"

#include <algorithm>
#include <limits>

#include "tradeopt/errors.hpp"

namespace tradeopt::wire {
namespace {

double number(const json& j, const std::string& path) {
  if (!j.is_number()) throw ValidationError("expected a number", path);
  return j.get<double>();
}

int integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ValidationError("expected an integer", path);
  const auto v = j.get<std::int64_t>();
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
    throw ValidationError("integer out of range", path);
  }
  return static_cast<int>(v);
}

std::vector<std::string> id_list(const json& j, const std::string& path) {
  if (!j.is_array()) throw ValidationError("expected an array of player ids", path);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_string()) throw ValidationError("expected a string", path + "/" + std::to_string(i));
    out.push_back(j[i].get<std::string>());
  }
  return out;
}

std::vector<std::string> names_in_roster_order(const Roster* roster,
                                               const std::vector<std::string>& ids) {
  std::vector<std::string> names;
  if (!roster) return names;
  for (const auto& p : roster->players) {
    if (std::binary_search(ids.begin(), ids.end(), p.player_id)) names.push_back(p.name);
  }
  return names;
}

}  // namespace

RunSettings settings_from_json(const json& j, const std::string& path) {
  RunSettings out;
  if (j.is_null()) return out;
  if (!j.is_object()) throw ValidationError("expected an object", path);
  if (const auto it = j.find("preset"); it != j.end()) {
    if (!it->is_string()) throw ValidationError("expected a string", path + "/preset");
    try {
      out.config = preset_config(it->get<std::string>());
    } catch (const ValidationError& e) {
      throw ValidationError(e.message(), path + "/preset");
    }
  }
  EngineConfig& c = out.config;
  for (const auto& [key, value] : j.items()) {
    const std::string p = path + "/" + key;
    if (key == "preset") continue;
    if (key == "alpha") c.alpha = number(value, p);
    else if (key == "beta") c.beta = number(value, p);
    else if (key == "gamma") c.gamma = number(value, p);
    else if (key == "playoff_weight") c.playoff_weight = number(value, p);
    else if (key == "max_players_per_side") c.max_players_per_side = integer(value, p);
    else if (key == "generations") c.generations = integer(value, p);
    else if (key == "max_population") c.max_population = integer(value, p);
    else if (key == "elite_top_n") c.elite_top_n = integer(value, p);
    else if (key == "elite_per_team") c.elite_per_team = integer(value, p);
    else if (key == "filter_cost_threshold") c.filter_cost_threshold = number(value, p);
    else if (key == "filter_keep_prob") c.filter_keep_prob = number(value, p);
    else if (key == "rng_seed") {
      if (!value.is_number_unsigned() && !(value.is_number_integer() && value.get<std::int64_t>() >= 0)) {
        throw ValidationError("expected a non-negative integer", p);
      }
      c.rng_seed = value.get<std::uint64_t>();
    } else if (key == "mutation_probs") {
      if (!value.is_array() || value.size() != kMutationOpCount) {
        throw ValidationError("expected an array of 6 numbers", p);
      }
      for (std::size_t i = 0; i < kMutationOpCount; ++i) {
        c.mutation_probs[i] = number(value[i], p + "/" + std::to_string(i));
      }
    } else if (key == "playoff_weeks") {
      if (!value.is_array()) throw ValidationError("expected an array of weeks", p);
      std::set<int> weeks;
      for (std::size_t i = 0; i < value.size(); ++i) {
        weeks.insert(integer(value[i], p + "/" + std::to_string(i)));
      }
      out.playoff_weeks = std::move(weeks);
    } else {
      throw ValidationError("unknown field '" + key + "'", p);
    }
  }
  try {
    c.validate();
  } catch (const ValidationError& e) {
    throw ValidationError(e.message(), path + "/" + e.path());
  }
  return out;
}

json config_to_json(const EngineConfig& c) {
  return json{{"alpha", c.alpha},
              {"beta", c.beta},
              {"gamma", c.gamma},
              {"playoff_weight", c.playoff_weight},
              {"max_players_per_side", c.max_players_per_side},
              {"generations", c.generations},
              {"max_population", c.max_population},
              {"mutation_probs", c.mutation_probs},
              {"elite_top_n", c.elite_top_n},
              {"elite_per_team", c.elite_per_team},
              {"filter_cost_threshold", c.filter_cost_threshold},
              {"filter_keep_prob", c.filter_keep_prob},
              {"rng_seed", c.rng_seed}};
}

Trade trade_from_json(const json& j, const std::string& path) {
  if (!j.is_object()) throw ValidationError("expected an object", path);
  for (const auto& [key, value] : j.items()) {
    if (key != "opponent_team_id" && key != "giving" && key != "receiving") {
      throw ValidationError("unknown field '" + key + "'", path + "/" + key);
    }
  }
  const auto opp = j.find("opponent_team_id");
  if (opp == j.end() || !opp->is_string()) {
    throw ValidationError("expected a string", path + "/opponent_team_id");
  }
  const auto giving = j.find("giving");
  const auto receiving = j.find("receiving");
  if (giving == j.end()) throw ValidationError("missing required field", path + "/giving");
  if (receiving == j.end()) throw ValidationError("missing required field", path + "/receiving");
  try {
    return Trade(opp->get<std::string>(), id_list(*giving, path + "/giving"),
                 id_list(*receiving, path + "/receiving"));
  } catch (const ValidationError& e) {
    if (!e.path().empty()) throw;
    throw ValidationError(e.message(), path);
  }
}

json weekly_to_json(const WeeklyGains& gains) {
  json out = json::object();
  for (std::size_t i = 0; i < gains.values.size(); ++i) {
    out[std::to_string(gains.first_week + static_cast<int>(i))] = gains.values[i];
  }
  return out;
}

json evaluation_to_json(const TradeEvaluation& e) {
  return json{{"cost", e.cost},
              {"gain_a", e.gain_a},
              {"gain_b", e.gain_b},
              {"weighted_gain_a", e.weighted_gain_a},
              {"feasible", e.feasible},
              {"weekly_gain_a", weekly_to_json(e.weekly_gain_a)},
              {"weekly_gain_b", weekly_to_json(e.weekly_gain_b)}};
}

json individual_to_json(const Individual& ind, const LeagueSnapshot& snapshot) {
  const Roster* opponent = snapshot.find_team(ind.trade.opponent_team_id());
  return json{{"opponent_team_id", ind.trade.opponent_team_id()},
              {"opponent_team_name", opponent ? opponent->team_name : std::string{}},
              {"giving", ind.trade.giving()},
              {"receiving", ind.trade.receiving()},
              {"giving_names", names_in_roster_order(&snapshot.user_team(), ind.trade.giving())},
              {"receiving_names", names_in_roster_order(opponent, ind.trade.receiving())},
              {"evaluation", evaluation_to_json(ind.evaluation)}};
}

json league_summary(const LeagueSnapshot& s) {
  json teams = json::array();
  for (const auto& t : s.teams()) {
    json players = json::array();
    for (const auto& p : t.players) {
      players.push_back(
          {{"player_id", p.player_id}, {"name", p.name}, {"position", std::string(to_string(p.position))}});
    }
    teams.push_back({{"team_id", t.team_id},
                     {"team_name", t.team_name},
                     {"roster_size", t.players.size()},
                     {"players", std::move(players)}});
  }
  return json{{"user_team_id", s.user_team_id()},
              {"current_week", s.current_week()},
              {"final_week", s.final_week()},
              {"playoff_weeks", s.playoff_weeks()},
              {"teams", std::move(teams)}};
}

}  // namespace tradeopt::wire

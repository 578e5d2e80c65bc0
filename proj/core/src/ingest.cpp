#include "tradeopt/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <unordered_set>

#include "json.hpp"
#include "tradeopt/errors.hpp"

namespace tradeopt {
namespace {

using nlohmann::json;

std::string child(const std::string& path, std::string_view key) {
  return path + "/" + std::string(key);
}
std::string child(const std::string& path, std::size_t index) {
  return path + "/" + std::to_string(index);
}

void expect_object(const json& j, const std::string& path,
                   std::initializer_list<std::string_view> allowed) {
  if (!j.is_object()) throw ValidationError("expected an object", path);
  for (const auto& [key, value] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ValidationError("unknown field '" + key + "'", child(path, key));
    }
  }
}

const json& require(const json& obj, std::string_view key, const std::string& path) {
  const auto it = obj.find(std::string(key));
  if (it == obj.end()) throw ValidationError("missing required field", child(path, key));
  return *it;
}

std::string read_string(const json& j, const std::string& path) {
  if (!j.is_string()) throw ValidationError("expected a string", path);
  return j.get<std::string>();
}

int read_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ValidationError("expected an integer", path);
  const auto v = j.get<std::int64_t>();
  if (v < -1'000'000 || v > 1'000'000) throw ValidationError("integer out of range", path);
  return static_cast<int>(v);
}

double read_points(const json& j, const std::string& path) {
  if (!j.is_number()) throw ValidationError("expected a number", path);
  const double v = j.get<double>();
  if (!std::isfinite(v) || v < 0.0) throw ValidationError("points must be finite and >= 0", path);
  return v;
}

int parse_week_key(const std::string& key, const std::string& path) {
  int week = 0;
  const auto [end, ec] = std::from_chars(key.data(), key.data() + key.size(), week);
  if (ec != std::errc{} || end != key.data() + key.size() || std::to_string(week) != key) {
    throw ValidationError("week key must be an integer string", path);
  }
  if (week < kMinWeek || week > kMaxWeek) throw ValidationError("week outside [1, 18]", path);
  return week;
}

Position read_position(const json& j, const std::string& path) {
  const std::string text = read_string(j, path);
  const auto pos = parse_position(text);
  if (!pos) throw ValidationError("unknown position '" + text + "'", path);
  return *pos;
}

WeeklyPoints read_weekly(const json& j, const std::string& path) {
  if (!j.is_object()) throw ValidationError("expected an object keyed by week", path);
  WeeklyPoints points{};
  for (const auto& [key, value] : j.items()) {
    const std::string p = child(path, key);
    points[static_cast<std::size_t>(parse_week_key(key, p))] = read_points(value, p);
  }
  return points;
}

PlayerProjection read_player(const json& j, const std::string& path) {
  expect_object(j, path, {"player_id", "name", "position", "weekly_points"});
  PlayerProjection p;
  p.player_id = read_string(require(j, "player_id", path), child(path, "player_id"));
  if (p.player_id.empty()) throw ValidationError("empty player_id", child(path, "player_id"));
  p.name = read_string(require(j, "name", path), child(path, "name"));
  p.position = read_position(require(j, "position", path), child(path, "position"));
  if (const auto it = j.find("weekly_points"); it != j.end()) {
    p.weekly_points = read_weekly(*it, child(path, "weekly_points"));
  }
  return p;
}

Roster read_team(const json& j, const std::string& path) {
  expect_object(j, path, {"team_id", "team_name", "players"});
  Roster r;
  r.team_id = read_string(require(j, "team_id", path), child(path, "team_id"));
  if (const auto it = j.find("team_name"); it != j.end()) {
    r.team_name = read_string(*it, child(path, "team_name"));
  } else {
    r.team_name = r.team_id;
  }
  const json& players = require(j, "players", path);
  const std::string players_path = child(path, "players");
  if (!players.is_array()) throw ValidationError("expected an array", players_path);
  for (std::size_t i = 0; i < players.size(); ++i) {
    r.players.push_back(read_player(players[i], child(players_path, i)));
  }
  return r;
}

FreeAgentCeilings read_ceilings(const json& j, const std::string& path) {
  if (!j.is_object()) throw ValidationError("expected an object keyed by position", path);
  FreeAgentCeilings c;
  for (const auto& [key, weeks] : j.items()) {
    const std::string p = child(path, key);
    const auto pos = parse_position(key);
    if (!pos || key != to_string(*pos)) throw ValidationError("unknown position '" + key + "'", p);
    const WeeklyPoints points = read_weekly(weeks, p);
    for (int w = kMinWeek; w <= kMaxWeek; ++w) c.set(*pos, w, points[static_cast<std::size_t>(w)]);
  }
  return c;
}

json weekly_to_json(const WeeklyPoints& points, int first, int last) {
  json out = json::object();
  for (int w = kMinWeek; w <= kMaxWeek; ++w) {
    const double v = points[static_cast<std::size_t>(w)];
    if (v != 0.0 || (w >= first && w <= last)) out[std::to_string(w)] = v;
  }
  return out;
}

void append_csv_field(std::string& out, const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) {
    out += field;
    return;
  }
  out.push_back('"');
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
}

std::string join_names(const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out += ", ";
    out += names[i];
  }
  return out;
}

std::vector<std::string> names_in_roster_order(const Roster& roster,
                                               const std::vector<std::string>& ids) {
  std::vector<std::string> names;
  for (const auto& p : roster.players) {
    if (std::binary_search(ids.begin(), ids.end(), p.player_id)) names.push_back(p.name);
  }
  return names;
}

}  // namespace

LeagueSnapshot load_snapshot(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document.begin(), document.end());
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("malformed document: ") + e.what(), "");
  }
  expect_object(doc, "", {"version", "league", "free_agents", "ceilings"});
  const int version = read_int(require(doc, "version", ""), "/version");
  if (version != kSnapshotVersion) {
    throw ValidationError("unsupported snapshot version " + std::to_string(version) +
                              " (this build reads version " + std::to_string(kSnapshotVersion) + ")",
                          "/version");
  }

  const json& league = require(doc, "league", "");
  expect_object(league, "/league",
                {"user_team_id", "current_week", "final_week", "playoff_weeks", "teams"});
  const std::string user = read_string(require(league, "user_team_id", "/league"),
                                       "/league/user_team_id");
  const int current = read_int(require(league, "current_week", "/league"), "/league/current_week");
  int final_week = kDefaultFinalWeek;
  if (const auto it = league.find("final_week"); it != league.end()) {
    final_week = read_int(*it, "/league/final_week");
  }
  std::set<int> playoffs;
  if (const auto it = league.find("playoff_weeks"); it != league.end()) {
    if (!it->is_array()) throw ValidationError("expected an array", "/league/playoff_weeks");
    for (std::size_t i = 0; i < it->size(); ++i) {
      playoffs.insert(read_int((*it)[i], child("/league/playoff_weeks", i)));
    }
  } else {
    for (int w : {15, 16, 17}) {
      if (w <= final_week) playoffs.insert(w);
    }
  }

  const json& teams_json = require(league, "teams", "/league");
  if (!teams_json.is_array()) throw ValidationError("expected an array", "/league/teams");
  std::vector<Roster> teams;
  for (std::size_t i = 0; i < teams_json.size(); ++i) {
    teams.push_back(read_team(teams_json[i], child("/league/teams", i)));
  }

  const bool has_free_agents = doc.contains("free_agents");
  const bool has_ceilings = doc.contains("ceilings");
  if (has_free_agents && has_ceilings) {
    throw ValidationError("supply either free_agents or ceilings, not both", "/ceilings");
  }
  if (!has_free_agents && !has_ceilings) {
    throw ValidationError("one of free_agents or ceilings is required", "/free_agents");
  }

  FreeAgentCeilings ceilings;
  if (has_ceilings) {
    ceilings = read_ceilings(doc["ceilings"], "/ceilings");
  } else {
    const json& fa = doc["free_agents"];
    if (!fa.is_array()) throw ValidationError("expected an array", "/free_agents");
    std::unordered_set<std::string> rostered;
    for (const auto& t : teams) {
      for (const auto& p : t.players) rostered.insert(p.player_id);
    }
    std::unordered_set<std::string> seen;
    for (std::size_t i = 0; i < fa.size(); ++i) {
      const std::string p_path = child("/free_agents", i);
      const PlayerProjection p = read_player(fa[i], p_path);
      if (rostered.count(p.player_id) || !seen.insert(p.player_id).second) {
        throw ValidationError("duplicate player_id '" + p.player_id + "'",
                              child(p_path, "player_id"));
      }
      for (int w = kMinWeek; w <= kMaxWeek; ++w) ceilings.raise(p.position, w, p.points(w));
    }
  }

  return LeagueSnapshot(user, std::move(teams), current, final_week, std::move(playoffs),
                        std::move(ceilings));
}

LeagueSnapshot load_snapshot_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open snapshot file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw std::runtime_error("error reading snapshot file '" + path + "'");
  return load_snapshot(buffer.str());
}

std::string save_snapshot(const LeagueSnapshot& snapshot) {
  // ordered_json keeps fields in the documented order.
  using ojson = nlohmann::ordered_json;
  const int first = snapshot.current_week();
  const int last = snapshot.final_week();
  ojson teams = ojson::array();
  for (const auto& team : snapshot.teams()) {
    ojson players = ojson::array();
    for (const auto& p : team.players) {
      players.push_back(ojson{{"player_id", p.player_id},
                              {"name", p.name},
                              {"position", std::string(to_string(p.position))},
                              {"weekly_points", weekly_to_json(p.weekly_points, first, last)}});
    }
    teams.push_back(
        ojson{{"team_id", team.team_id}, {"team_name", team.team_name}, {"players", players}});
  }
  ojson ceilings = ojson::object();
  for (Position pos : kAllPositions) {
    WeeklyPoints points{};
    for (int w = kMinWeek; w <= kMaxWeek; ++w) {
      points[static_cast<std::size_t>(w)] = snapshot.ceilings().at(pos, w);
    }
    ceilings[std::string(to_string(pos))] = weekly_to_json(points, first, last);
  }
  ojson doc{{"version", kSnapshotVersion},
            {"league",
             ojson{{"user_team_id", snapshot.user_team_id()},
                   {"current_week", snapshot.current_week()},
                   {"final_week", snapshot.final_week()},
                   {"playoff_weeks", snapshot.playoff_weeks()},
                   {"teams", teams}}},
            {"ceilings", ceilings}};
  return doc.dump(2) + "\n";
}

TradeTableRow make_table_row(const Individual& individual, const LeagueSnapshot& snapshot) {
  TradeTableRow row;
  row.opponent_team_id = individual.trade.opponent_team_id();
  row.cost = individual.evaluation.cost;
  row.gain_a = individual.evaluation.gain_a;
  row.gain_b = individual.evaluation.gain_b;
  row.giving_names = names_in_roster_order(snapshot.user_team(), individual.trade.giving());
  if (const Roster* opp = snapshot.find_team(row.opponent_team_id)) {
    row.receiving_names = names_in_roster_order(*opp, individual.trade.receiving());
  }
  return row;
}

std::vector<TradeTableRow> trade_table_rows(const RunResult& result,
                                            const LeagueSnapshot& snapshot) {
  std::vector<const Individual*> ranked;
  for (const auto& ind : result.final_population.individuals) ranked.push_back(&ind);
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const Individual* a, const Individual* b) { return ranks_before(*a, *b); });
  std::vector<TradeTableRow> rows;
  rows.reserve(ranked.size());
  for (const Individual* ind : ranked) rows.push_back(make_table_row(*ind, snapshot));
  return rows;
}

std::string format_points(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", value);
  std::string out(buf);
  if (out == "-0.00") out = "0.00";
  return out;
}

std::string trades_to_csv(const std::vector<TradeTableRow>& rows) {
  std::string out(kTradeCsvHeader);
  out.push_back('\n');
  for (const auto& row : rows) {
    out += format_points(row.cost);
    out.push_back(',');
    out += format_points(row.gain_a);
    out.push_back(',');
    out += format_points(row.gain_b);
    out.push_back(',');
    append_csv_field(out, join_names(row.giving_names));
    out.push_back(',');
    append_csv_field(out, join_names(row.receiving_names));
    out.push_back('\n');
  }
  return out;
}

std::string export_trades_csv(const RunResult& result, const LeagueSnapshot& snapshot) {
  return trades_to_csv(trade_table_rows(result, snapshot));
}

}  // namespace tradeopt

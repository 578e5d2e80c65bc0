#include "test_support.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace tradeopt::testing {

std::string fixture_path(const std::string& name) {
  return std::string(TRADEOPT_FIXTURE_DIR) + "/" + name;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

PlayerProjection flat_player(std::string id, Position pos, double points, int first, int last) {
  PlayerProjection p;
  p.name = "Player " + id;
  p.player_id = std::move(id);
  p.position = pos;
  for (int w = first; w <= last; ++w) p.weekly_points[static_cast<std::size_t>(w)] = points;
  return p;
}

PlayerProjection weekly_player(std::string id, Position pos,
                               std::initializer_list<std::pair<int, double>> weeks) {
  PlayerProjection p;
  p.name = "Player " + id;
  p.player_id = std::move(id);
  p.position = pos;
  for (const auto& [w, v] : weeks) p.weekly_points[static_cast<std::size_t>(w)] = v;
  return p;
}

Roster roster(std::string team_id, std::vector<PlayerProjection> players) {
  Roster r;
  r.team_name = "Team " + team_id;
  r.team_id = std::move(team_id);
  r.players = std::move(players);
  return r;
}

namespace {
double grid_value(std::mt19937_64& gen, double max_points) {
  std::uniform_int_distribution<int> ticks(0, static_cast<int>(max_points * 64));
  return ticks(gen) / 64.0;
}
}  // namespace

Roster random_roster(std::mt19937_64& gen, const std::string& team_id, std::size_t size,
                     int first_week, int last_week) {
  std::uniform_int_distribution<int> pos(0, static_cast<int>(kPositionCount) - 1);
  std::bernoulli_distribution bye(0.1);
  std::vector<PlayerProjection> players;
  for (std::size_t i = 0; i < size; ++i) {
    PlayerProjection p;
    p.player_id = team_id + "-" + std::to_string(i);
    p.name = p.player_id;
    p.position = kAllPositions[static_cast<std::size_t>(pos(gen))];
    for (int w = first_week; w <= last_week; ++w) {
      p.weekly_points[static_cast<std::size_t>(w)] = bye(gen) ? 0.0 : grid_value(gen, 30.0);
    }
    players.push_back(std::move(p));
  }
  return roster(team_id, std::move(players));
}

FreeAgentCeilings random_ceilings(std::mt19937_64& gen, double max_points) {
  FreeAgentCeilings c;
  for (Position p : kAllPositions) {
    for (int w = kMinWeek; w <= kMaxWeek; ++w) c.set(p, w, grid_value(gen, max_points));
  }
  return c;
}

LeagueSnapshot two_team_league(Roster user, Roster opponent, int current_week, int final_week,
                               std::set<int> playoffs, FreeAgentCeilings ceilings) {
  const std::string user_id = user.team_id;
  std::vector<Roster> teams;
  teams.push_back(std::move(user));
  teams.push_back(std::move(opponent));
  return LeagueSnapshot(user_id, std::move(teams), current_week, final_week, std::move(playoffs),
                        std::move(ceilings));
}

}  // namespace tradeopt::testing

#include "tradeopt/domain.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>

#include "tradeopt/errors.hpp"

namespace tradeopt {

std::string_view to_string(Position p) noexcept {
  switch (p) {
    case Position::QB: return "QB";
    case Position::RB: return "RB";
    case Position::WR: return "WR";
    case Position::TE: return "TE";
    case Position::K: return "K";
    case Position::DST: return "DST";
  }
  return "?";
}

std::optional<Position> parse_position(std::string_view text) noexcept {
  std::string upper;
  upper.reserve(text.size());
  for (char c : text) upper.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  if (upper == "D/ST") return Position::DST;
  for (Position p : kAllPositions) {
    if (upper == to_string(p)) return p;
  }
  return std::nullopt;
}

const PlayerProjection* Roster::find(std::string_view player_id) const noexcept {
  for (const auto& p : players) {
    if (p.player_id == player_id) return &p;
  }
  return nullptr;
}

void FreeAgentCeilings::set(Position p, int week, double points) {
  if (week < kMinWeek || week > kMaxWeek) {
    throw ValidationError("ceiling week " + std::to_string(week) + " outside [1, 18]");
  }
  if (!(points >= 0.0) || !std::isfinite(points)) {
    throw ValidationError("ceiling points must be finite and non-negative");
  }
  values_[index_of(p)][static_cast<std::size_t>(week)] = points;
}

void FreeAgentCeilings::raise(Position p, int week, double points) {
  if (points > at(p, week)) set(p, week, points);
}

double FreeAgentCeilings::flex_at(int week) const noexcept {
  return std::max({at(Position::RB, week), at(Position::WR, week), at(Position::TE, week)});
}

FreeAgentCeilings FreeAgentCeilings::uniform(double points) {
  FreeAgentCeilings c;
  for (Position p : kAllPositions) {
    for (int w = kMinWeek; w <= kMaxWeek; ++w) c.set(p, w, points);
  }
  return c;
}

LeagueSnapshot::LeagueSnapshot(std::string user_team_id, std::vector<Roster> teams,
                               int current_week, int final_week, std::set<int> playoff_weeks,
                               FreeAgentCeilings ceilings)
    : user_team_id_(std::move(user_team_id)),
      teams_(std::move(teams)),
      current_week_(current_week),
      final_week_(final_week),
      playoff_weeks_(std::move(playoff_weeks)),
      ceilings_(std::move(ceilings)) {
  if (teams_.size() < 2) throw ValidationError("league needs at least 2 teams", "/league/teams");
  if (current_week_ < kMinWeek || final_week_ > kMaxWeek || current_week_ > final_week_) {
    throw ValidationError("week window must satisfy 1 <= current_week <= final_week <= 18",
                          "/league/current_week");
  }
  for (int w : playoff_weeks_) {
    if (w < kMinWeek || w > final_week_) {
      throw ValidationError("playoff week " + std::to_string(w) + " outside [1, final_week]",
                            "/league/playoff_weeks");
    }
  }

  for (std::size_t t = 0; t < teams_.size(); ++t) {
    const Roster& roster = teams_[t];
    const std::string team_path = "/league/teams/" + std::to_string(t);
    if (roster.team_id.empty()) throw ValidationError("empty team_id", team_path + "/team_id");
    if (!team_lookup_.emplace(roster.team_id, t).second) {
      throw ValidationError("duplicate team_id '" + roster.team_id + "'", team_path + "/team_id");
    }
    for (std::size_t i = 0; i < roster.players.size(); ++i) {
      const PlayerProjection& p = roster.players[i];
      const std::string player_path = team_path + "/players/" + std::to_string(i);
      if (p.player_id.empty()) {
        throw ValidationError("empty player_id", player_path + "/player_id");
      }
      for (double v : p.weekly_points) {
        if (!(v >= 0.0) || !std::isfinite(v)) {
          throw ValidationError("projected points must be finite and non-negative",
                                player_path + "/weekly_points");
        }
      }
      if (!player_lookup_.emplace(p.player_id, PlayerLocation{t, i}).second) {
        throw ValidationError("duplicate player_id '" + p.player_id + "'",
                              player_path + "/player_id");
      }
    }
  }

  const auto user = team_lookup_.find(user_team_id_);
  if (user == team_lookup_.end()) {
    throw ValidationError("user_team_id '" + user_team_id_ + "' names no team",
                          "/league/user_team_id");
  }
  user_index_ = user->second;
  for (std::size_t t = 0; t < teams_.size(); ++t) {
    if (t != user_index_) opponents_.push_back(t);
  }
}

std::optional<std::size_t> LeagueSnapshot::team_index(std::string_view team_id) const noexcept {
  const auto it = team_lookup_.find(std::string(team_id));
  if (it == team_lookup_.end()) return std::nullopt;
  return it->second;
}

const Roster* LeagueSnapshot::find_team(std::string_view team_id) const noexcept {
  const auto idx = team_index(team_id);
  return idx ? &teams_[*idx] : nullptr;
}

std::optional<PlayerLocation> LeagueSnapshot::locate(std::string_view player_id) const noexcept {
  const auto it = player_lookup_.find(std::string(player_id));
  if (it == player_lookup_.end()) return std::nullopt;
  return it->second;
}

const PlayerProjection* LeagueSnapshot::find_player(std::string_view player_id) const noexcept {
  const auto loc = locate(player_id);
  return loc ? &teams_[loc->team_index].players[loc->player_index] : nullptr;
}

LeagueSnapshot LeagueSnapshot::with_playoff_weeks(std::set<int> playoff_weeks) const {
  return LeagueSnapshot(user_team_id_, teams_, current_week_, final_week_,
                        std::move(playoff_weeks), ceilings_);
}

bool LeagueSnapshot::operator==(const LeagueSnapshot& other) const {
  return user_team_id_ == other.user_team_id_ && teams_ == other.teams_ &&
         current_week_ == other.current_week_ && final_week_ == other.final_week_ &&
         playoff_weeks_ == other.playoff_weeks_ && ceilings_ == other.ceilings_;
}

namespace {

void sort_side(std::vector<std::string>& side, const char* label) {
  if (side.empty()) throw ValidationError(std::string("trade side '") + label + "' is empty");
  std::sort(side.begin(), side.end());
  const auto dup = std::adjacent_find(side.begin(), side.end());
  if (dup != side.end()) {
    throw ValidationError("player '" + *dup + "' listed twice on side '" + label + "'");
  }
}

}  // namespace

Trade::Trade(std::string opponent_team_id, std::vector<std::string> giving,
             std::vector<std::string> receiving)
    : opponent_team_id_(std::move(opponent_team_id)),
      giving_(std::move(giving)),
      receiving_(std::move(receiving)) {
  if (opponent_team_id_.empty()) throw ValidationError("trade has no opponent team");
  sort_side(giving_, "giving");
  sort_side(receiving_, "receiving");
  for (const auto& id : giving_) {
    if (std::binary_search(receiving_.begin(), receiving_.end(), id)) {
      throw ValidationError("player '" + id + "' appears on both sides of the trade");
    }
  }
}

std::string Trade::canonical_key() const {
  std::string key = opponent_team_id_;
  key.push_back('|');
  for (std::size_t i = 0; i < giving_.size(); ++i) {
    if (i) key.push_back(',');
    key += giving_[i];
  }
  key.push_back('|');
  for (std::size_t i = 0; i < receiving_.size(); ++i) {
    if (i) key.push_back(',');
    key += receiving_[i];
  }
  return key;
}

bool Trade::is_subset_of(const Trade& other) const {
  return opponent_team_id_ == other.opponent_team_id_ &&
         std::includes(other.giving_.begin(), other.giving_.end(), giving_.begin(), giving_.end()) &&
         std::includes(other.receiving_.begin(), other.receiving_.end(), receiving_.begin(),
                       receiving_.end());
}

std::size_t TradeHash::operator()(const Trade& t) const noexcept {
  std::size_t h = std::hash<std::string>{}(t.opponent_team_id());
  auto mix = [&h](const std::string& s) {
    h ^= std::hash<std::string>{}(s) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  };
  for (const auto& s : t.giving()) mix(s);
  h ^= 0x51ed27;  // side separator
  for (const auto& s : t.receiving()) mix(s);
  return h;
}

double WeeklyGains::sum() const noexcept {
  return std::accumulate(values.begin(), values.end(), 0.0);
}

}  // namespace tradeopt

#pragma once

// Core value types shared across the engine: positions, player projections,
// rosters, league snapshots, trades, and trade evaluations. Everything here is
// immutable once constructed and safe to share between threads.

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace tradeopt {

inline constexpr int kMinWeek = 1;
inline constexpr int kMaxWeek = 18;
inline constexpr int kDefaultFinalWeek = 17;

enum class Position : std::uint8_t { QB, RB, WR, TE, K, DST };

inline constexpr std::size_t kPositionCount = 6;
inline constexpr std::array<Position, kPositionCount> kAllPositions = {
    Position::QB, Position::RB, Position::WR, Position::TE, Position::K, Position::DST};

constexpr std::size_t index_of(Position p) noexcept { return static_cast<std::size_t>(p); }

// Canonical spelling: "QB", "RB", "WR", "TE", "K", "DST".
std::string_view to_string(Position p) noexcept;
// Accepts the canonical spelling plus "D/ST" (case-insensitive).
std::optional<Position> parse_position(std::string_view text) noexcept;

using WeeklyPoints = std::array<double, kMaxWeek + 1>;  // index 0 unused

struct PlayerProjection {
  std::string player_id;
  std::string name;
  Position position = Position::QB;
  WeeklyPoints weekly_points{};  // missing weeks are 0.0 (byes)

  double points(int week) const noexcept {
    return week >= kMinWeek && week <= kMaxWeek ? weekly_points[static_cast<std::size_t>(week)]
                                                : 0.0;
  }

  bool operator==(const PlayerProjection&) const = default;
};

struct Roster {
  std::string team_id;
  std::string team_name;
  std::vector<PlayerProjection> players;

  const PlayerProjection* find(std::string_view player_id) const noexcept;

  bool operator==(const Roster&) const = default;
};

// Best undrafted projection per position and week; absent entries are 0.0.
class FreeAgentCeilings {
 public:
  double at(Position p, int week) const noexcept {
    return week >= kMinWeek && week <= kMaxWeek ? values_[index_of(p)][static_cast<std::size_t>(week)]
                                                : 0.0;
  }
  void set(Position p, int week, double points);
  // Raises the stored ceiling to `points` if it is larger.
  void raise(Position p, int week, double points);

  // Ceiling for an unfilled FLEX slot: the best RB/WR/TE ceiling.
  double flex_at(int week) const noexcept;

  static FreeAgentCeilings uniform(double points);

  bool operator==(const FreeAgentCeilings&) const = default;

 private:
  std::array<WeeklyPoints, kPositionCount> values_{};
};

struct PlayerLocation {
  std::size_t team_index = 0;
  std::size_t player_index = 0;
};

// The complete input universe for one optimization. The constructor validates
// every invariant and throws ValidationError on the first violation.
class LeagueSnapshot {
 public:
  LeagueSnapshot(std::string user_team_id, std::vector<Roster> teams, int current_week,
                 int final_week, std::set<int> playoff_weeks, FreeAgentCeilings ceilings);

  const std::string& user_team_id() const noexcept { return user_team_id_; }
  const std::vector<Roster>& teams() const noexcept { return teams_; }
  int current_week() const noexcept { return current_week_; }
  int final_week() const noexcept { return final_week_; }
  const std::set<int>& playoff_weeks() const noexcept { return playoff_weeks_; }
  const FreeAgentCeilings& ceilings() const noexcept { return ceilings_; }

  std::size_t user_team_index() const noexcept { return user_index_; }
  const Roster& user_team() const noexcept { return teams_[user_index_]; }
  // Indices of every team other than the user's, in document order.
  const std::vector<std::size_t>& opponent_indices() const noexcept { return opponents_; }

  std::optional<std::size_t> team_index(std::string_view team_id) const noexcept;
  const Roster* find_team(std::string_view team_id) const noexcept;
  std::optional<PlayerLocation> locate(std::string_view player_id) const noexcept;
  const PlayerProjection* find_player(std::string_view player_id) const noexcept;

  // Weeks current_week..final_week inclusive.
  int remaining_week_count() const noexcept { return final_week_ - current_week_ + 1; }
  bool in_window(int week) const noexcept {
    return week >= current_week_ && week <= final_week_;
  }

  // Same league with a different playoff-week set (re-validated).
  LeagueSnapshot with_playoff_weeks(std::set<int> playoff_weeks) const;

  bool operator==(const LeagueSnapshot& other) const;

 private:
  std::string user_team_id_;
  std::vector<Roster> teams_;
  int current_week_;
  int final_week_;
  std::set<int> playoff_weeks_;
  FreeAgentCeilings ceilings_;

  std::size_t user_index_ = 0;
  std::vector<std::size_t> opponents_;
  std::unordered_map<std::string, std::size_t> team_lookup_;
  std::unordered_map<std::string, PlayerLocation> player_lookup_;
};

// An exchange of player subsets between the user's team (giving) and one
// opponent (receiving). Sides are stored sorted, so equality and ordering are
// over the canonical identity (opponent, sorted giving, sorted receiving).
class Trade {
 public:
  // Throws ValidationError on an empty side, a repeated id, or an id on both sides.
  Trade(std::string opponent_team_id, std::vector<std::string> giving,
        std::vector<std::string> receiving);

  const std::string& opponent_team_id() const noexcept { return opponent_team_id_; }
  const std::vector<std::string>& giving() const noexcept { return giving_; }
  const std::vector<std::string>& receiving() const noexcept { return receiving_; }
  std::size_t total_players() const noexcept { return giving_.size() + receiving_.size(); }

  // "opponent|a,b|c": stable textual form of the canonical identity.
  std::string canonical_key() const;

  // Both sides of *this are subsets of the matching sides of `other`, and
  // both trades target the same opponent.
  bool is_subset_of(const Trade& other) const;

  bool operator==(const Trade&) const = default;
  auto operator<=>(const Trade&) const = default;

 private:
  std::string opponent_team_id_;
  std::vector<std::string> giving_;
  std::vector<std::string> receiving_;
};

struct TradeHash {
  std::size_t operator()(const Trade& t) const noexcept;
};

// Per-week gains over the remaining window, indexed by week number.
struct WeeklyGains {
  int first_week = kMinWeek;
  std::vector<double> values;

  int last_week() const noexcept { return first_week + static_cast<int>(values.size()) - 1; }
  double at(int week) const noexcept {
    const int i = week - first_week;
    return i >= 0 && i < static_cast<int>(values.size()) ? values[static_cast<std::size_t>(i)]
                                                         : 0.0;
  }
  double sum() const noexcept;

  bool operator==(const WeeklyGains&) const = default;
};

struct TradeEvaluation {
  WeeklyGains weekly_gain_a;
  WeeklyGains weekly_gain_b;
  double gain_a = 0.0;           // unweighted season gain, user's team
  double gain_b = 0.0;           // unweighted season gain, opponent
  double weighted_gain_a = 0.0;  // playoff-weighted gain, user's team
  double cost = 0.0;
  bool feasible = false;         // gain_a > 0 && gain_b > 0

  bool operator==(const TradeEvaluation&) const = default;
};

}  // namespace tradeopt

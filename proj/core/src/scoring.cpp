#include "tradeopt/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "tradeopt/errors.hpp"

namespace tradeopt {
namespace {

constexpr double kNone = -std::numeric_limits<double>::infinity();

// The three largest projections seen so far, per position.
struct TopThree {
  std::array<std::array<double, 3>, kPositionCount> top;

  TopThree() {
    for (auto& t : top) t = {kNone, kNone, kNone};
  }

  void push(Position p, double v) noexcept {
    auto& t = top[index_of(p)];
    if (v > t[2]) {
      if (v > t[1]) {
        t[2] = t[1];
        if (v > t[0]) {
          t[1] = t[0];
          t[0] = v;
        } else {
          t[1] = v;
        }
      } else {
        t[2] = v;
      }
    }
  }
};

void check_week(int week) {
  if (week < kMinWeek || week > kMaxWeek) {
    throw ValidationError("week " + std::to_string(week) + " outside [1, 18]");
  }
}

// Slots of one position draw from the roster's projections merged with an
// unlimited supply of ceiling placeholders, so the k-th best candidate is
// max(k-th best player, ceiling). Dedicated slots take the top candidates;
// FLEX takes the best remaining RB/WR/TE candidate.
double lineup_from_top(const TopThree& t, int week, const FreeAgentCeilings& ceilings) noexcept {
  double total = 0.0;
  double flex = kNone;
  for (Position p : kAllPositions) {
    const auto& top = t.top[index_of(p)];
    const double ceiling = ceilings.at(p, week);
    const int slots = LineupSlots::dedicated(p);
    for (int k = 0; k < slots; ++k) total += std::max(top[static_cast<std::size_t>(k)], ceiling);
    if (LineupSlots::flex_eligible(p)) {
      flex = std::max(flex, std::max(top[static_cast<std::size_t>(slots)], ceiling));
    }
  }
  return total + flex;
}

}  // namespace

double optimal_lineup_score(std::span<const PlayerProjection* const> players, int week,
                            const FreeAgentCeilings& ceilings) {
  check_week(week);
  TopThree t;
  for (const PlayerProjection* p : players) t.push(p->position, p->points(week));
  return lineup_from_top(t, week, ceilings);
}

double optimal_lineup_score(const Roster& roster, int week, const FreeAgentCeilings& ceilings) {
  check_week(week);
  TopThree t;
  for (const auto& p : roster.players) t.push(p.position, p.points(week));
  return lineup_from_top(t, week, ceilings);
}

double season_score(const Roster& roster, const LeagueSnapshot& snapshot) {
  double total = 0.0;
  for (int w = snapshot.current_week(); w <= snapshot.final_week(); ++w) {
    total += optimal_lineup_score(roster, w, snapshot.ceilings());
  }
  return total;
}

double WeightVector::total() const noexcept {
  return std::accumulate(weights.begin(), weights.end(), 0.0);
}

WeightVector weight_vector(const LeagueSnapshot& snapshot, double playoff_weight) {
  if (!(playoff_weight > 0.0) || !std::isfinite(playoff_weight)) {
    throw ValidationError("playoff weight must be > 0", "playoff_weight");
  }
  WeightVector wv;
  wv.first_week = snapshot.current_week();
  wv.playoff_weight = playoff_weight;
  const int remaining = snapshot.remaining_week_count();
  for (int w = snapshot.current_week(); w <= snapshot.final_week(); ++w) {
    if (snapshot.playoff_weeks().count(w)) ++wv.playoff_weeks_remaining;
  }
  wv.regular_weeks_remaining = remaining - wv.playoff_weeks_remaining;

  const int np = wv.playoff_weeks_remaining;
  const int nn = wv.regular_weeks_remaining;
  if (nn == 0) {
    // Only playoff weeks remain; mass conservation forces uniform weights.
    wv.playoff_weight = 1.0;
    wv.regular_weight = 1.0;
  } else {
    wv.regular_weight = (static_cast<double>(np + nn) - playoff_weight * np) / nn;
  }
  wv.weights.reserve(static_cast<std::size_t>(remaining));
  for (int w = snapshot.current_week(); w <= snapshot.final_week(); ++w) {
    wv.weights.push_back(snapshot.playoff_weeks().count(w) ? wv.playoff_weight
                                                           : wv.regular_weight);
  }
  return wv;
}

double weighted_gain(const WeeklyGains& gains, const WeightVector& weights) noexcept {
  double total = 0.0;
  for (std::size_t i = 0; i < gains.values.size(); ++i) {
    total += weights.at(gains.first_week + static_cast<int>(i)) * gains.values[i];
  }
  return total;
}

double trade_cost(double weighted_gain_a, double gain_b, double alpha, double beta,
                  double gamma) noexcept {
  return -(alpha * weighted_gain_a + beta * gain_b - gamma * std::abs(weighted_gain_a - gain_b));
}

void validate_trade(const Trade& trade, const LeagueSnapshot& snapshot, int max_players_per_side) {
  const auto opponent = snapshot.team_index(trade.opponent_team_id());
  if (!opponent) {
    throw ValidationError("unknown opponent team '" + trade.opponent_team_id() + "'",
                          "opponent_team_id");
  }
  if (*opponent == snapshot.user_team_index()) {
    throw ValidationError("a trade must target a team other than the user's", "opponent_team_id");
  }
  const auto limit = static_cast<std::size_t>(max_players_per_side);
  if (trade.giving().size() > limit || trade.receiving().size() > limit) {
    throw ValidationError("each side may hold at most " + std::to_string(max_players_per_side) +
                              " players",
                          "max_players_per_side");
  }
  for (const auto& id : trade.giving()) {
    const auto loc = snapshot.locate(id);
    if (!loc || loc->team_index != snapshot.user_team_index()) {
      throw UnknownPlayerError(id, "not on the user's roster");
    }
  }
  for (const auto& id : trade.receiving()) {
    const auto loc = snapshot.locate(id);
    if (!loc || loc->team_index != *opponent) {
      throw UnknownPlayerError(id, "not on " + trade.opponent_team_id() + "'s roster");
    }
  }
}

TradeEvaluator::TradeEvaluator(const LeagueSnapshot& snapshot, const EngineConfig& config)
    : snapshot_(snapshot), config_(config), weights_(weight_vector(snapshot, config.playoff_weight)) {
  baseline_.reserve(snapshot.teams().size());
  for (const auto& team : snapshot.teams()) {
    std::vector<double> weekly;
    weekly.reserve(static_cast<std::size_t>(snapshot.remaining_week_count()));
    for (int w = snapshot.current_week(); w <= snapshot.final_week(); ++w) {
      weekly.push_back(optimal_lineup_score(team, w, snapshot.ceilings()));
    }
    baseline_.push_back(std::move(weekly));
  }
}

double TradeEvaluator::baseline(std::size_t team_index, int week) const noexcept {
  return baseline_[team_index][static_cast<std::size_t>(week - snapshot_.current_week())];
}

TradeEvaluation TradeEvaluator::evaluate(const Trade& trade) const {
  validate_trade(trade, snapshot_, config_.max_players_per_side);
  const std::size_t a = snapshot_.user_team_index();
  const std::size_t b = *snapshot_.team_index(trade.opponent_team_id());
  const Roster& roster_a = snapshot_.teams()[a];
  const Roster& roster_b = snapshot_.teams()[b];

  auto contains = [](const std::vector<std::string>& sorted, const std::string& id) {
    return std::binary_search(sorted.begin(), sorted.end(), id);
  };

  // Post-trade rosters: keep what was not traded away, add what was received.
  std::vector<const PlayerProjection*> after_a;
  std::vector<const PlayerProjection*> after_b;
  after_a.reserve(roster_a.players.size() + trade.receiving().size());
  after_b.reserve(roster_b.players.size() + trade.giving().size());
  for (const auto& p : roster_a.players) {
    if (contains(trade.giving(), p.player_id)) {
      after_b.push_back(&p);
    } else {
      after_a.push_back(&p);
    }
  }
  for (const auto& p : roster_b.players) {
    if (contains(trade.receiving(), p.player_id)) {
      after_a.push_back(&p);
    } else {
      after_b.push_back(&p);
    }
  }

  TradeEvaluation ev;
  const int first = snapshot_.current_week();
  const auto weeks = static_cast<std::size_t>(snapshot_.remaining_week_count());
  ev.weekly_gain_a.first_week = first;
  ev.weekly_gain_b.first_week = first;
  ev.weekly_gain_a.values.resize(weeks);
  ev.weekly_gain_b.values.resize(weeks);
  for (std::size_t i = 0; i < weeks; ++i) {
    const int w = first + static_cast<int>(i);
    const double la = optimal_lineup_score(after_a, w, snapshot_.ceilings()) - baseline_[a][i];
    const double lb = optimal_lineup_score(after_b, w, snapshot_.ceilings()) - baseline_[b][i];
    ev.weekly_gain_a.values[i] = la;
    ev.weekly_gain_b.values[i] = lb;
    ev.gain_a += la;
    ev.gain_b += lb;
    ev.weighted_gain_a += weights_.weights[i] * la;
  }
  ev.cost = trade_cost(ev.weighted_gain_a, ev.gain_b, config_.alpha, config_.beta, config_.gamma);
  ev.feasible = ev.gain_a > 0.0 && ev.gain_b > 0.0;
  return ev;
}

TradeEvaluation evaluate_trade(const Trade& trade, const LeagueSnapshot& snapshot,
                               const EngineConfig& config) {
  return TradeEvaluator(snapshot, config).evaluate(trade);
}

}  // namespace tradeopt

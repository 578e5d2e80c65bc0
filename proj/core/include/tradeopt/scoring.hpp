#pragma once

#include <span>
#include <vector>

#include "tradeopt/config.hpp"
#include "tradeopt/domain.hpp"

namespace tradeopt {

// Starting lineup: 1 QB, 2 RB, 2 WR, 1 TE, 1 FLEX (RB/WR/TE), 1 K, 1 DST.
struct LineupSlots {
  static constexpr int kQB = 1;
  static constexpr int kRB = 2;
  static constexpr int kWR = 2;
  static constexpr int kTE = 1;
  static constexpr int kFlex = 1;
  static constexpr int kK = 1;
  static constexpr int kDST = 1;
  static constexpr int kTotal = kQB + kRB + kWR + kTE + kFlex + kK + kDST;

  static constexpr int dedicated(Position p) noexcept {
    switch (p) {
      case Position::QB: return kQB;
      case Position::RB: return kRB;
      case Position::WR: return kWR;
      case Position::TE: return kTE;
      case Position::K: return kK;
      case Position::DST: return kDST;
    }
    return 0;
  }
  static constexpr bool flex_eligible(Position p) noexcept {
    return p == Position::RB || p == Position::WR || p == Position::TE;
  }
};
static_assert(LineupSlots::kTotal == 9);

// L(R, w): best achievable starting-lineup points for `week`. Any slot the
// roster cannot fill (or fills worse than the free-agent ceiling) takes the
// ceiling for its position; FLEX falls back to the best RB/WR/TE ceiling.
// Throws ValidationError for a week outside [1, 18].
double optimal_lineup_score(const Roster& roster, int week, const FreeAgentCeilings& ceilings);
double optimal_lineup_score(std::span<const PlayerProjection* const> players, int week,
                            const FreeAgentCeilings& ceilings);

// S(R): sum of optimal lineup scores over current_week..final_week.
double season_score(const Roster& roster, const LeagueSnapshot& snapshot);

// Per-week weights for the user's gain. Playoff weeks in the window get the
// playoff weight; the rest share the remaining mass so the weights sum to
// the number of remaining weeks.
struct WeightVector {
  int first_week = kMinWeek;
  std::vector<double> weights;
  int playoff_weeks_remaining = 0;  // n_p
  int regular_weeks_remaining = 0;  // n_n
  double playoff_weight = 1.0;      // alpha_p
  double regular_weight = 1.0;      // alpha_n

  double at(int week) const noexcept {
    const int i = week - first_week;
    return i >= 0 && i < static_cast<int>(weights.size()) ? weights[static_cast<std::size_t>(i)]
                                                          : 0.0;
  }
  double total() const noexcept;
};

// With no regular weeks left every weight is 1.0. Throws ValidationError
// unless playoff_weight > 0.
WeightVector weight_vector(const LeagueSnapshot& snapshot, double playoff_weight);

double weighted_gain(const WeeklyGains& gains, const WeightVector& weights) noexcept;

double trade_cost(double weighted_gain_a, double gain_b, double alpha, double beta,
                  double gamma) noexcept;

// Checks that the trade names a real opponent, that every giving id belongs
// to the user's roster and every receiving id to the opponent's roster, and
// that each side holds at most `max_players_per_side` players.
// Throws UnknownPlayerError / ValidationError.
void validate_trade(const Trade& trade, const LeagueSnapshot& snapshot, int max_players_per_side);

// Evaluates trades against one snapshot and config, caching each team's
// pre-trade weekly lineup scores. Holds a reference to the snapshot, which
// must outlive the evaluator.
class TradeEvaluator {
 public:
  TradeEvaluator(const LeagueSnapshot& snapshot, const EngineConfig& config);

  TradeEvaluation evaluate(const Trade& trade) const;

  const LeagueSnapshot& snapshot() const noexcept { return snapshot_; }
  const EngineConfig& config() const noexcept { return config_; }
  const WeightVector& weights() const noexcept { return weights_; }
  double baseline(std::size_t team_index, int week) const noexcept;

 private:
  const LeagueSnapshot& snapshot_;
  EngineConfig config_;
  WeightVector weights_;
  std::vector<std::vector<double>> baseline_;  // [team][week - current_week]
};

// One-shot evaluation; equivalent to TradeEvaluator(snapshot, config).evaluate(trade).
TradeEvaluation evaluate_trade(const Trade& trade, const LeagueSnapshot& snapshot,
                               const EngineConfig& config);

}  // namespace tradeopt

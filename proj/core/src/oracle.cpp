#include "tradeopt/oracle.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <limits>
#include <vector>

#include "tradeopt/errors.hpp"

namespace tradeopt::oracle {
namespace {

enum class Slot { QB, RB, WR, TE, FLEX, K, DST };

constexpr std::array<Slot, 9> kSlots = {Slot::QB, Slot::RB,   Slot::RB, Slot::WR, Slot::WR,
                                        Slot::TE, Slot::FLEX, Slot::K,  Slot::DST};

bool eligible(Slot slot, Position p) {
  switch (slot) {
    case Slot::QB: return p == Position::QB;
    case Slot::RB: return p == Position::RB;
    case Slot::WR: return p == Position::WR;
    case Slot::TE: return p == Position::TE;
    case Slot::FLEX: return p == Position::RB || p == Position::WR || p == Position::TE;
    case Slot::K: return p == Position::K;
    case Slot::DST: return p == Position::DST;
  }
  return false;
}

double placeholder(Slot slot, int week, const FreeAgentCeilings& c) {
  switch (slot) {
    case Slot::QB: return c.at(Position::QB, week);
    case Slot::RB: return c.at(Position::RB, week);
    case Slot::WR: return c.at(Position::WR, week);
    case Slot::TE: return c.at(Position::TE, week);
    case Slot::FLEX:
      return std::max({c.at(Position::RB, week), c.at(Position::WR, week), c.at(Position::TE, week)});
    case Slot::K: return c.at(Position::K, week);
    case Slot::DST: return c.at(Position::DST, week);
  }
  return 0.0;
}

struct Search {
  const std::vector<PlayerProjection>& players;
  int week;
  const FreeAgentCeilings& ceilings;
  std::vector<bool> used;
  double best = -std::numeric_limits<double>::infinity();

  void go(std::size_t slot_index, double total) {
    if (slot_index == kSlots.size()) {
      best = std::max(best, total);
      return;
    }
    const Slot slot = kSlots[slot_index];
    go(slot_index + 1, total + placeholder(slot, week, ceilings));
    for (std::size_t i = 0; i < players.size(); ++i) {
      if (used[i] || !eligible(slot, players[i].position)) continue;
      used[i] = true;
      go(slot_index + 1, total + players[i].points(week));
      used[i] = false;
    }
  }
};

double season_total(const Roster& roster, const LeagueSnapshot& s, std::vector<double>& weekly) {
  weekly.clear();
  double total = 0.0;
  for (int w = s.current_week(); w <= s.final_week(); ++w) {
    weekly.push_back(brute_force_lineup(roster, w, s.ceilings()));
    total += weekly.back();
  }
  return total;
}

std::vector<std::vector<std::size_t>> subsets_up_to(std::size_t n, int m) {
  std::vector<std::vector<std::size_t>> out;
  if (n >= 63) throw ValidationError("roster too large for subset enumeration");
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    if (std::popcount(mask) > m) continue;
    std::vector<std::size_t> subset;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::uint64_t{1} << i)) subset.push_back(i);
    }
    out.push_back(std::move(subset));
  }
  return out;
}

bool better(const Individual& a, const Individual& b) {
  if (a.evaluation.cost != b.evaluation.cost) return a.evaluation.cost < b.evaluation.cost;
  if (a.trade.total_players() != b.trade.total_players()) {
    return a.trade.total_players() < b.trade.total_players();
  }
  return a.trade.canonical_key() < b.trade.canonical_key();
}

}  // namespace

double brute_force_lineup(const Roster& roster, int week, const FreeAgentCeilings& ceilings) {
  if (roster.players.size() > kMaxLineupRoster) {
    throw ValidationError("brute-force lineup guard: roster has " +
                          std::to_string(roster.players.size()) + " players (max 18)");
  }
  Search search{roster.players, week, ceilings, std::vector<bool>(roster.players.size(), false)};
  search.go(0, 0.0);
  return search.best;
}

std::optional<Individual> brute_force_best_trade(const LeagueSnapshot& snapshot,
                                                 const EngineConfig& config, std::uint64_t cap) {
  const int m = config.max_players_per_side;
  const Roster& user = snapshot.user_team();
  const auto user_subsets = subsets_up_to(user.players.size(), m);

  std::uint64_t count = 0;
  for (std::size_t t : snapshot.opponent_indices()) {
    count += user_subsets.size() * subsets_up_to(snapshot.teams()[t].players.size(), m).size();
  }
  if (count > cap) throw CandidateCapExceeded(count, cap);

  // Playoff weights straight from the definition.
  const int first = snapshot.current_week();
  int n_playoff = 0;
  int n_regular = 0;
  for (int w = first; w <= snapshot.final_week(); ++w) {
    (snapshot.playoff_weeks().count(w) ? n_playoff : n_regular)++;
  }
  std::vector<double> weight;
  for (int w = first; w <= snapshot.final_week(); ++w) {
    if (n_regular == 0) {
      weight.push_back(1.0);
    } else if (snapshot.playoff_weeks().count(w)) {
      weight.push_back(config.playoff_weight);
    } else {
      weight.push_back((n_playoff + n_regular - config.playoff_weight * n_playoff) / n_regular);
    }
  }

  std::vector<double> before_a;
  season_total(user, snapshot, before_a);

  std::optional<Individual> best;
  std::vector<double> before_b;
  std::vector<double> after_a_weekly;
  std::vector<double> after_b_weekly;
  for (std::size_t t : snapshot.opponent_indices()) {
    const Roster& opp = snapshot.teams()[t];
    season_total(opp, snapshot, before_b);
    const auto opp_subsets = subsets_up_to(opp.players.size(), m);
    for (const auto& give : user_subsets) {
      for (const auto& get : opp_subsets) {
        Roster after_a{user.team_id, user.team_name, {}};
        Roster after_b{opp.team_id, opp.team_name, {}};
        std::vector<std::string> giving_ids;
        std::vector<std::string> receiving_ids;
        for (std::size_t i = 0; i < user.players.size(); ++i) {
          const bool traded = std::find(give.begin(), give.end(), i) != give.end();
          (traded ? after_b : after_a).players.push_back(user.players[i]);
          if (traded) giving_ids.push_back(user.players[i].player_id);
        }
        for (std::size_t i = 0; i < opp.players.size(); ++i) {
          const bool traded = std::find(get.begin(), get.end(), i) != get.end();
          (traded ? after_a : after_b).players.push_back(opp.players[i]);
          if (traded) receiving_ids.push_back(opp.players[i].player_id);
        }
        season_total(after_a, snapshot, after_a_weekly);
        season_total(after_b, snapshot, after_b_weekly);

        TradeEvaluation ev;
        ev.weekly_gain_a.first_week = first;
        ev.weekly_gain_b.first_week = first;
        for (std::size_t i = 0; i < weight.size(); ++i) {
          const double la = after_a_weekly[i] - before_a[i];
          const double lb = after_b_weekly[i] - before_b[i];
          ev.weekly_gain_a.values.push_back(la);
          ev.weekly_gain_b.values.push_back(lb);
          ev.gain_a += la;
          ev.gain_b += lb;
          ev.weighted_gain_a += weight[i] * la;
        }
        ev.feasible = ev.gain_a > 0.0 && ev.gain_b > 0.0;
        if (!ev.feasible) continue;
        ev.cost = -(config.alpha * ev.weighted_gain_a + config.beta * ev.gain_b -
                    config.gamma * std::fabs(ev.weighted_gain_a - ev.gain_b));
        Individual candidate{Trade(opp.team_id, giving_ids, receiving_ids), std::move(ev)};
        if (!best || better(candidate, *best)) best = std::move(candidate);
      }
    }
  }
  return best;
}

}  // namespace tradeopt::oracle

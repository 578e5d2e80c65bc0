#pragma once

// Deliberately naive reference implementations for verification. Nothing
// here calls into scoring or engine code paths; they are exponentially slow
// and guarded accordingly.

#include <cstdint>
#include <optional>

#include "tradeopt/config.hpp"
#include "tradeopt/domain.hpp"
#include "tradeopt/engine.hpp"

namespace tradeopt::oracle {

inline constexpr std::size_t kMaxLineupRoster = 18;

// Maximum over every assignment of distinct players (or ceiling placeholders)
// to the nine lineup slots. Throws ValidationError for rosters over 18.
double brute_force_lineup(const Roster& roster, int week, const FreeAgentCeilings& ceilings);

// Cheapest feasible trade over the full candidate space, ties broken by fewer
// players and then canonical identity. Gains are recomputed from scratch with
// brute_force_lineup. std::nullopt when no feasible trade exists.
// Throws CandidateCapExceeded when the candidate count exceeds `cap`.
std::optional<Individual> brute_force_best_trade(const LeagueSnapshot& snapshot,
                                                 const EngineConfig& config,
                                                 std::uint64_t cap = kDefaultEnumerationCap);

}  // namespace tradeopt::oracle

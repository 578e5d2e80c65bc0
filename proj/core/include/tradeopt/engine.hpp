#pragma once

// Genetic search over multi-player trades.
//
// A run starts from every mutually beneficial one-for-one trade and then
// repeats a fixed generation loop:
//   1. elites: the elite_top_n cheapest trades plus the elite_per_team
//      cheapest trades for each opponent
//   2. offspring: one mutation applied to every current individual; an
//      empty population instead receives max_population spawn-new trades
//   3. merge elites and offspring, dropping duplicate canonical trades
//   4. evaluations are current (mutation re-evaluates every changed trade)
//   5. prune: of two trades with equal cost (within 1e-6) where one's sides
//      are subsets of the other's, keep the smaller
//   6. filter: feasible trades below filter_cost_threshold stay; other
//      feasible trades stay with probability filter_keep_prob; infeasible
//      trades never stay. Elites are carried forward unconditionally.
//   7. sort by cost and truncate to max_population
//
// All randomness comes from one Rng seeded with EngineConfig::rng_seed and is
// drawn in population order, so a (snapshot, config) pair always produces the
// same result.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tradeopt/config.hpp"
#include "tradeopt/domain.hpp"
#include "tradeopt/random.hpp"
#include "tradeopt/scoring.hpp"

namespace tradeopt {

inline constexpr double kCostEpsilon = 1e-6;
inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;

struct Individual {
  Trade trade;
  TradeEvaluation evaluation;

  bool operator==(const Individual&) const = default;
};

// Strict ordering used everywhere a ranking is needed: ascending cost, then
// fewer total players, then canonical trade identity.
bool ranks_before(const Individual& lhs, const Individual& rhs) noexcept;

struct Population {
  std::vector<Individual> individuals;  // kept sorted by ranks_before
  int generation_index = 0;

  std::optional<double> best_cost() const noexcept;
  bool operator==(const Population&) const = default;
};

struct RunResult {
  Population final_population;
  std::map<std::string, Individual> best_per_team;  // opponent team id -> best trade
  // Best cost after initialization, then after each generation; +inf marks
  // an empty population.
  std::vector<double> history;
  EngineConfig config;
  std::uint64_t seed = 0;
  std::uint64_t evaluations = 0;  // trade evaluations performed
  int completed_generations = 0;
  bool cancelled = false;

  bool operator==(const RunResult&) const = default;
};

struct RunProgress {
  int completed_generations = 0;
  int total_generations = 0;
  std::optional<double> best_cost;
};

// Called after initialization and after every generation. Returning false
// stops the run early (RunResult::cancelled is set).
using ProgressCallback = std::function<bool(const RunProgress&)>;

struct GenerationStats {
  std::uint64_t evaluations = 0;
  std::array<std::uint64_t, kMutationOpCount> operator_counts{};
  std::size_t elites = 0;
  std::size_t merged = 0;      // after dedup
  std::size_t pruned = 0;
  std::size_t filtered_out = 0;
};

Population initialize_population(const TradeEvaluator& evaluator,
                                 std::uint64_t* evaluations = nullptr);
Population initialize_population(const LeagueSnapshot& snapshot, const EngineConfig& config);

MutationOp select_mutation_operator(const MutationProbabilities& probs, Rng& rng);

// Applies one operator chosen by config.mutation_probs. Dead ends (no partner
// trade, no eligible player) fall back to keep-same.
Individual mutate(const Individual& individual, const Population& population,
                  const TradeEvaluator& evaluator, Rng& rng);
// Applies a specific operator.
Individual apply_mutation(MutationOp op, const Individual& individual,
                          const Population& population, const TradeEvaluator& evaluator, Rng& rng);

Population run_generation(const Population& population, const TradeEvaluator& evaluator, Rng& rng,
                          GenerationStats* stats = nullptr);

// Throws ValidationError for an invalid config.
RunResult run(const LeagueSnapshot& snapshot, const EngineConfig& config,
              const ProgressCallback& on_progress = {});

// Every trade with 1..m players per side against every opponent, evaluated
// and ranked. Throws CandidateCapExceeded when the candidate count exceeds cap.
std::vector<Individual> enumerate_all_trades(const LeagueSnapshot& snapshot,
                                             const EngineConfig& config,
                                             std::uint64_t cap = kDefaultEnumerationCap);

std::uint64_t candidate_trade_count(const LeagueSnapshot& snapshot, int max_players_per_side);

struct BaselineResult {
  std::uint64_t candidate_count = 0;
  std::uint64_t samples = 0;
  std::uint64_t feasible_samples = 0;
  std::optional<Individual> best;  // best feasible sampled trade
};

// Random-trade baseline: `samples` candidates drawn uniformly (with
// replacement) from the full candidate space and evaluated, no evolution.
// With `exhaustive` set every candidate is evaluated once instead.
BaselineResult random_baseline(const LeagueSnapshot& snapshot, const EngineConfig& config,
                               std::uint64_t samples, std::uint64_t seed, bool exhaustive = false);

}  // namespace tradeopt

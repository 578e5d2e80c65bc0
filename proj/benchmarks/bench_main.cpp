#include <benchmark/benchmark.h>

#include <string>

#include "tradeopt/engine.hpp"
#include "tradeopt/ingest.hpp"
#include "tradeopt/scoring.hpp"

namespace tradeopt {
namespace {

const LeagueSnapshot& league12() {
  static const LeagueSnapshot s = load_snapshot_file(std::string(TRADEOPT_FIXTURE_DIR) + "/league12.json");
  return s;
}

void BM_OptimalLineup(benchmark::State& state) {
  const LeagueSnapshot& s = league12();
  const Roster& roster = s.user_team();
  for (auto _ : state) {
    benchmark::DoNotOptimize(optimal_lineup_score(roster, s.current_week(), s.ceilings()));
  }
}
BENCHMARK(BM_OptimalLineup);

void BM_SeasonScore(benchmark::State& state) {
  const LeagueSnapshot& s = league12();
  for (auto _ : state) {
    benchmark::DoNotOptimize(season_score(s.user_team(), s));
  }
}
BENCHMARK(BM_SeasonScore);

// Trade size n-for-n against the first opponent.
void BM_EvaluateTrade(benchmark::State& state) {
  const LeagueSnapshot& s = league12();
  const TradeEvaluator evaluator(s, EngineConfig{});
  const Roster& opponent = s.teams()[s.opponent_indices().front()];
  std::vector<std::string> giving;
  std::vector<std::string> receiving;
  for (int i = 0; i < state.range(0); ++i) {
    giving.push_back(s.user_team().players[static_cast<std::size_t>(i)].player_id);
    receiving.push_back(opponent.players[static_cast<std::size_t>(i)].player_id);
  }
  const Trade trade(opponent.team_id, giving, receiving);
  for (auto _ : state) {
    benchmark::DoNotOptimize(evaluator.evaluate(trade));
  }
}
BENCHMARK(BM_EvaluateTrade)->Arg(1)->Arg(2)->Arg(3);

void BM_InitializePopulation(benchmark::State& state) {
  const TradeEvaluator evaluator(league12(), EngineConfig{});
  for (auto _ : state) {
    benchmark::DoNotOptimize(initialize_population(evaluator));
  }
}
BENCHMARK(BM_InitializePopulation)->Unit(benchmark::kMillisecond);

// One generation from a population warmed up for 50 generations.
void BM_RunGeneration(benchmark::State& state) {
  EngineConfig config;
  config.max_population = static_cast<int>(state.range(0));
  const TradeEvaluator evaluator(league12(), config);
  Rng rng(7);
  Population pop = initialize_population(evaluator);
  for (int g = 0; g < 50; ++g) pop = run_generation(pop, evaluator, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_generation(pop, evaluator, rng));
  }
}
BENCHMARK(BM_RunGeneration)->Arg(50)->Arg(100)->Arg(200)->Unit(benchmark::kMicrosecond);

}  // namespace
}  // namespace tradeopt

// The distro's benchmark_main archive is LTO-built; define main here instead.
BENCHMARK_MAIN();

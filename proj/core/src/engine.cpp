#include "tradeopt/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>
#include <unordered_set>

#include "tradeopt/candidates.hpp"
#include "tradeopt/errors.hpp"

namespace tradeopt {

bool ranks_before(const Individual& lhs, const Individual& rhs) noexcept {
  if (lhs.evaluation.cost != rhs.evaluation.cost) return lhs.evaluation.cost < rhs.evaluation.cost;
  if (lhs.trade.total_players() != rhs.trade.total_players()) {
    return lhs.trade.total_players() < rhs.trade.total_players();
  }
  return lhs.trade < rhs.trade;
}

std::optional<double> Population::best_cost() const noexcept {
  if (individuals.empty()) return std::nullopt;
  return individuals.front().evaluation.cost;
}

namespace {

enum class Side { kGiving, kReceiving };

using Partners = std::vector<const Individual*>;

struct MutationContext {
  const TradeEvaluator& evaluator;
  Rng& rng;
  int max_side;
};

const Roster& roster_for(const LeagueSnapshot& snapshot, const Trade& trade, Side side) {
  return side == Side::kGiving ? snapshot.user_team() : *snapshot.find_team(trade.opponent_team_id());
}

// Roster players (document order) not already on `side`.
std::vector<std::string> untraded(const Roster& roster, const std::vector<std::string>& side) {
  std::vector<std::string> out;
  for (const auto& p : roster.players) {
    if (!std::binary_search(side.begin(), side.end(), p.player_id)) out.push_back(p.player_id);
  }
  return out;
}

template <typename T>
const T& pick(const std::vector<T>& items, Rng& rng) {
  return items[static_cast<std::size_t>(rng.uniform_index(items.size()))];
}

Side pick_side(Rng& rng) { return rng.uniform_index(2) == 0 ? Side::kGiving : Side::kReceiving; }

Trade with_side(const Trade& trade, Side side, std::vector<std::string> players) {
  if (side == Side::kGiving) return Trade(trade.opponent_team_id(), std::move(players), trade.receiving());
  return Trade(trade.opponent_team_id(), trade.giving(), std::move(players));
}

const std::vector<std::string>& side_of(const Trade& trade, Side side) {
  return side == Side::kGiving ? trade.giving() : trade.receiving();
}

std::optional<Trade> add_or_remove(const Trade& trade, MutationContext& ctx) {
  const Side side = pick_side(ctx.rng);
  bool add = ctx.rng.uniform_index(2) == 0;
  std::vector<std::string> players = side_of(trade, side);
  if (!add && players.size() == 1) add = true;  // a side never empties

  std::vector<std::string> candidates;
  if (add) {
    candidates = untraded(roster_for(ctx.evaluator.snapshot(), trade, side), players);
    if (players.size() >= static_cast<std::size_t>(ctx.max_side) || candidates.empty()) {
      if (players.size() <= 1) return std::nullopt;
      add = false;
    }
  }
  if (add) {
    players.push_back(pick(candidates, ctx.rng));
  } else {
    players.erase(players.begin() + static_cast<std::ptrdiff_t>(ctx.rng.uniform_index(players.size())));
  }
  return with_side(trade, side, std::move(players));
}

std::vector<std::string> sample_down(std::vector<std::string> players, int limit, Rng& rng) {
  if (players.size() <= static_cast<std::size_t>(limit)) return players;
  std::vector<std::string> kept;
  for (std::size_t i : rng.sample_indices(players.size(), static_cast<std::size_t>(limit))) {
    kept.push_back(std::move(players[i]));
  }
  return kept;
}

std::optional<Trade> combine(const Trade& trade, const Partners& partners, MutationContext& ctx) {
  if (partners.empty()) return std::nullopt;
  const Trade& other = pick(partners, ctx.rng)->trade;
  std::vector<std::string> giving;
  std::vector<std::string> receiving;
  std::set_union(trade.giving().begin(), trade.giving().end(), other.giving().begin(),
                 other.giving().end(), std::back_inserter(giving));
  std::set_union(trade.receiving().begin(), trade.receiving().end(), other.receiving().begin(),
                 other.receiving().end(), std::back_inserter(receiving));
  giving = sample_down(std::move(giving), ctx.max_side, ctx.rng);
  receiving = sample_down(std::move(receiving), ctx.max_side, ctx.rng);
  return Trade(trade.opponent_team_id(), std::move(giving), std::move(receiving));
}

std::optional<Trade> exchange(const Trade& trade, MutationContext& ctx) {
  const Side side = pick_side(ctx.rng);
  std::vector<std::string> players = side_of(trade, side);
  const auto candidates = untraded(roster_for(ctx.evaluator.snapshot(), trade, side), players);
  if (candidates.empty()) return std::nullopt;
  const auto slot = static_cast<std::size_t>(ctx.rng.uniform_index(players.size()));
  players[slot] = pick(candidates, ctx.rng);
  return with_side(trade, side, std::move(players));
}

std::optional<Trade> add_from_other(const Trade& trade, const Partners& partners,
                                    MutationContext& ctx) {
  if (partners.empty()) return std::nullopt;
  const Trade& other = pick(partners, ctx.rng)->trade;
  std::vector<std::pair<Side, std::string>> options;
  for (Side side : {Side::kGiving, Side::kReceiving}) {
    const auto& mine = side_of(trade, side);
    if (mine.size() >= static_cast<std::size_t>(ctx.max_side)) continue;
    for (const auto& id : side_of(other, side)) {
      if (!std::binary_search(mine.begin(), mine.end(), id)) options.emplace_back(side, id);
    }
  }
  if (options.empty()) return std::nullopt;
  const auto& [side, id] = pick(options, ctx.rng);
  std::vector<std::string> players = side_of(trade, side);
  players.push_back(id);
  return with_side(trade, side, std::move(players));
}

std::vector<std::string> random_subset(const Roster& roster, int max_side, Rng& rng) {
  const std::size_t n = roster.players.size();
  const std::size_t upper = std::min(n, static_cast<std::size_t>(max_side));
  const std::size_t k = 1 + static_cast<std::size_t>(rng.uniform_index(upper));
  std::vector<std::string> out;
  for (std::size_t i : rng.sample_indices(n, k)) out.push_back(roster.players[i].player_id);
  return out;
}

std::optional<Trade> spawn_new(MutationContext& ctx) {
  const LeagueSnapshot& snapshot = ctx.evaluator.snapshot();
  if (snapshot.user_team().players.empty()) return std::nullopt;
  std::vector<std::size_t> opponents;
  for (std::size_t t : snapshot.opponent_indices()) {
    if (!snapshot.teams()[t].players.empty()) opponents.push_back(t);
  }
  if (opponents.empty()) return std::nullopt;
  const Roster& opponent = snapshot.teams()[pick(opponents, ctx.rng)];
  auto giving = random_subset(snapshot.user_team(), ctx.max_side, ctx.rng);
  auto receiving = random_subset(opponent, ctx.max_side, ctx.rng);
  return Trade(opponent.team_id, std::move(giving), std::move(receiving));
}

Individual mutate_with(MutationOp op, const Individual& individual, const Partners& partners,
                       const TradeEvaluator& evaluator, Rng& rng, std::uint64_t* evaluations) {
  MutationContext ctx{evaluator, rng, evaluator.config().max_players_per_side};
  std::optional<Trade> next;
  switch (op) {
    case MutationOp::kKeepSame: break;
    case MutationOp::kAddOrRemove: next = add_or_remove(individual.trade, ctx); break;
    case MutationOp::kCombine: next = combine(individual.trade, partners, ctx); break;
    case MutationOp::kExchange: next = exchange(individual.trade, ctx); break;
    case MutationOp::kAddFromOther: next = add_from_other(individual.trade, partners, ctx); break;
    case MutationOp::kSpawnNew: next = spawn_new(ctx); break;
  }
  if (!next || *next == individual.trade) return individual;
  if (evaluations) ++*evaluations;
  TradeEvaluation ev = evaluator.evaluate(*next);
  return Individual{std::move(*next), std::move(ev)};
}

Partners partners_in(const Population& population, const Trade& trade) {
  Partners out;
  for (const auto& ind : population.individuals) {
    if (ind.trade.opponent_team_id() == trade.opponent_team_id() && ind.trade != trade) {
      out.push_back(&ind);
    }
  }
  return out;
}

void sort_ranked(std::vector<Individual>& individuals) {
  std::sort(individuals.begin(), individuals.end(), ranks_before);
}

}  // namespace

Population initialize_population(const TradeEvaluator& evaluator, std::uint64_t* evaluations) {
  const LeagueSnapshot& snapshot = evaluator.snapshot();
  Population pop;
  for (std::size_t t : snapshot.opponent_indices()) {
    const Roster& opponent = snapshot.teams()[t];
    for (const auto& mine : snapshot.user_team().players) {
      for (const auto& theirs : opponent.players) {
        Trade trade(opponent.team_id, {mine.player_id}, {theirs.player_id});
        TradeEvaluation ev = evaluator.evaluate(trade);
        if (evaluations) ++*evaluations;
        if (ev.gain_a > 0.0 && ev.gain_b > 0.0) {
          pop.individuals.push_back(Individual{std::move(trade), std::move(ev)});
        }
      }
    }
  }
  sort_ranked(pop.individuals);
  return pop;
}

Population initialize_population(const LeagueSnapshot& snapshot, const EngineConfig& config) {
  config.validate();
  return initialize_population(TradeEvaluator(snapshot, config));
}

MutationOp select_mutation_operator(const MutationProbabilities& probs, Rng& rng) {
  return static_cast<MutationOp>(rng.pick_weighted(probs));
}

Individual apply_mutation(MutationOp op, const Individual& individual, const Population& population,
                          const TradeEvaluator& evaluator, Rng& rng) {
  return mutate_with(op, individual, partners_in(population, individual.trade), evaluator, rng,
                     nullptr);
}

Individual mutate(const Individual& individual, const Population& population,
                  const TradeEvaluator& evaluator, Rng& rng) {
  const MutationOp op = select_mutation_operator(evaluator.config().mutation_probs, rng);
  return apply_mutation(op, individual, population, evaluator, rng);
}

Population run_generation(const Population& population, const TradeEvaluator& evaluator, Rng& rng,
                          GenerationStats* stats) {
  const EngineConfig& config = evaluator.config();
  GenerationStats local;
  GenerationStats& st = stats ? *stats : local;
  st = GenerationStats{};

  std::vector<const Individual*> ranked;
  ranked.reserve(population.individuals.size());
  for (const auto& ind : population.individuals) ranked.push_back(&ind);
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const Individual* a, const Individual* b) { return ranks_before(*a, *b); });

  // (1) Hybrid elitism: best overall plus best per opponent.
  std::vector<const Individual*> elites;
  {
    std::unordered_map<std::string, int> per_team;
    int overall = 0;
    for (const Individual* ind : ranked) {
      if (!ind->evaluation.feasible) continue;
      int& team_count = per_team[ind->trade.opponent_team_id()];
      const bool top = overall < config.elite_top_n;
      const bool team_top = team_count < config.elite_per_team;
      if (top || team_top) elites.push_back(ind);
      ++overall;
      ++team_count;
    }
  }
  st.elites = elites.size();

  // (2) Offspring, one mutation per individual, drawn in population order.
  std::unordered_map<std::string, Partners> by_team;
  for (const auto& ind : population.individuals) {
    by_team[ind.trade.opponent_team_id()].push_back(&ind);
  }
  std::vector<Individual> offspring;
  offspring.reserve(population.individuals.size());
  for (const auto& ind : population.individuals) {
    Partners partners;
    for (const Individual* other : by_team[ind.trade.opponent_team_id()]) {
      if (other->trade != ind.trade) partners.push_back(other);
    }
    const MutationOp op = select_mutation_operator(config.mutation_probs, rng);
    ++st.operator_counts[static_cast<std::size_t>(op)];
    offspring.push_back(mutate_with(op, ind, partners, evaluator, rng, &st.evaluations));
  }
  // An empty population has no parents; reseed it with spawn-new draws.
  if (population.individuals.empty()) {
    MutationContext ctx{evaluator, rng, config.max_players_per_side};
    for (int i = 0; i < config.max_population; ++i) {
      std::optional<Trade> trade = spawn_new(ctx);
      if (!trade) break;
      ++st.operator_counts[static_cast<std::size_t>(MutationOp::kSpawnNew)];
      ++st.evaluations;
      TradeEvaluation ev = evaluator.evaluate(*trade);
      offspring.push_back(Individual{std::move(*trade), std::move(ev)});
    }
  }

  // (3) Merge and dedup; elites come first so their protected status wins.
  // (4) Every member already carries the evaluation of its current trade.
  struct Candidate {
    Individual individual;
    bool protected_elite;
    bool removed = false;
  };
  std::vector<Candidate> merged;
  merged.reserve(elites.size() + offspring.size());
  std::unordered_set<Trade, TradeHash> seen;
  for (const Individual* e : elites) {
    if (seen.insert(e->trade).second) merged.push_back(Candidate{*e, true});
  }
  for (auto& child : offspring) {
    if (seen.insert(child.trade).second) merged.push_back(Candidate{std::move(child), false});
  }
  st.merged = merged.size();
  std::sort(merged.begin(), merged.end(), [](const Candidate& a, const Candidate& b) {
    return ranks_before(a.individual, b.individual);
  });

  // (5) Equal-cost subset pruning. Sorted by cost, so only a forward window
  // of near-equal costs needs checking.
  for (std::size_t i = 0; i < merged.size(); ++i) {
    if (merged[i].removed) continue;
    for (std::size_t j = i + 1; j < merged.size(); ++j) {
      if (merged[j].individual.evaluation.cost - merged[i].individual.evaluation.cost >
          kCostEpsilon) {
        break;
      }
      if (merged[j].removed) continue;
      const Trade& ti = merged[i].individual.trade;
      const Trade& tj = merged[j].individual.trade;
      if (ti.is_subset_of(tj)) {
        merged[j].removed = true;
        merged[i].protected_elite = merged[i].protected_elite || merged[j].protected_elite;
        ++st.pruned;
      } else if (tj.is_subset_of(ti)) {
        merged[i].removed = true;
        merged[j].protected_elite = merged[j].protected_elite || merged[i].protected_elite;
        ++st.pruned;
        break;
      }
    }
  }

  // (6) Filtering.
  Population next;
  next.generation_index = population.generation_index + 1;
  for (auto& c : merged) {
    if (c.removed) continue;
    const TradeEvaluation& ev = c.individual.evaluation;
    bool keep = false;
    if (ev.feasible) {
      keep = c.protected_elite || ev.cost < config.filter_cost_threshold ||
             rng.bernoulli(config.filter_keep_prob);
    }
    if (keep) {
      next.individuals.push_back(std::move(c.individual));
    } else {
      ++st.filtered_out;
    }
  }

  // (7) Population control.
  sort_ranked(next.individuals);
  if (next.individuals.size() > static_cast<std::size_t>(config.max_population)) {
    next.individuals.erase(next.individuals.begin() + config.max_population, next.individuals.end());
  }
  return next;
}

RunResult run(const LeagueSnapshot& snapshot, const EngineConfig& config,
              const ProgressCallback& on_progress) {
  config.validate();
  TradeEvaluator evaluator(snapshot, config);
  Rng rng(config.rng_seed);

  RunResult result;
  result.config = config;
  result.seed = config.rng_seed;

  auto record = [&result](const Population& pop) {
    result.history.push_back(pop.best_cost().value_or(std::numeric_limits<double>::infinity()));
  };

  Population pop = initialize_population(evaluator, &result.evaluations);
  record(pop);
  bool keep_going = !on_progress || on_progress(RunProgress{0, config.generations, pop.best_cost()});

  for (int g = 0; g < config.generations && keep_going; ++g) {
    GenerationStats stats;
    pop = run_generation(pop, evaluator, rng, &stats);
    result.evaluations += stats.evaluations;
    result.completed_generations = g + 1;
    record(pop);
    if (on_progress) {
      keep_going = on_progress(RunProgress{g + 1, config.generations, pop.best_cost()});
    }
  }
  result.cancelled = !keep_going && result.completed_generations < config.generations;

  for (const auto& ind : pop.individuals) {
    auto it = result.best_per_team.find(ind.trade.opponent_team_id());
    if (it == result.best_per_team.end()) {
      result.best_per_team.emplace(ind.trade.opponent_team_id(), ind);
    } else if (ranks_before(ind, it->second)) {
      it->second = ind;
    }
  }
  result.final_population = std::move(pop);
  return result;
}

std::uint64_t candidate_trade_count(const LeagueSnapshot& snapshot, int max_players_per_side) {
  return CandidateSpace(snapshot, max_players_per_side).count();
}

std::vector<Individual> enumerate_all_trades(const LeagueSnapshot& snapshot,
                                             const EngineConfig& config, std::uint64_t cap) {
  config.validate();
  const CandidateSpace space(snapshot, config.max_players_per_side);
  if (space.count() > cap) throw CandidateCapExceeded(space.count(), cap);
  const TradeEvaluator evaluator(snapshot, config);
  std::vector<Individual> out;
  out.reserve(static_cast<std::size_t>(space.count()));
  for (std::uint64_t i = 0; i < space.count(); ++i) {
    Trade trade = space.trade_at(i);
    TradeEvaluation ev = evaluator.evaluate(trade);
    out.push_back(Individual{std::move(trade), std::move(ev)});
  }
  sort_ranked(out);
  return out;
}

BaselineResult random_baseline(const LeagueSnapshot& snapshot, const EngineConfig& config,
                               std::uint64_t samples, std::uint64_t seed, bool exhaustive) {
  config.validate();
  const CandidateSpace space(snapshot, config.max_players_per_side);
  const TradeEvaluator evaluator(snapshot, config);
  BaselineResult result;
  result.candidate_count = space.count();
  if (space.count() == 0) return result;

  Rng rng(seed);
  const std::uint64_t draws = exhaustive ? space.count() : samples;
  for (std::uint64_t s = 0; s < draws; ++s) {
    const std::uint64_t index = exhaustive ? s : rng.uniform_index(space.count());
    Trade trade = space.trade_at(index);
    TradeEvaluation ev = evaluator.evaluate(trade);
    ++result.samples;
    if (!ev.feasible) continue;
    ++result.feasible_samples;
    Individual ind{std::move(trade), std::move(ev)};
    if (!result.best || ranks_before(ind, *result.best)) result.best = std::move(ind);
  }
  return result;
}

}  // namespace tradeopt

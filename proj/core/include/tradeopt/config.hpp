#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace tradeopt {

enum class MutationOp : std::uint8_t {
  kKeepSame = 0,
  kAddOrRemove,
  kCombine,
  kExchange,
  kAddFromOther,
  kSpawnNew,
};

inline constexpr std::size_t kMutationOpCount = 6;

std::string_view to_string(MutationOp op) noexcept;

using MutationProbabilities = std::array<double, kMutationOpCount>;

struct EngineConfig {
  // Cost weights: c = -(alpha * g_a^w + beta * g_b - gamma * |g_a^w - g_b|).
  double alpha = 1.0;
  double beta = 1.0;
  double gamma = 0.25;
  double playoff_weight = 1.2;

  int max_players_per_side = 3;
  int generations = 5000;
  int max_population = 100;
  MutationProbabilities mutation_probs = {0.2, 0.16, 0.16, 0.16, 0.16, 0.16};
  int elite_top_n = 15;
  int elite_per_team = 2;

  // Feasible trades with cost >= threshold survive filtering only with
  // probability filter_keep_prob. Infeasible trades never survive.
  double filter_cost_threshold = 0.0;
  double filter_keep_prob = 0.3;

  std::uint64_t rng_seed = 0;

  // Throws ValidationError naming the offending field.
  void validate() const;

  bool operator==(const EngineConfig&) const = default;
};

inline constexpr std::array<std::string_view, 5> kPresetNames = {
    "default", "high_playoff", "user_gain", "opponent_deemphasis", "fairness"};

// Hyperparameters of a named preset; every other field keeps its default.
// Throws ValidationError listing the valid names for an unknown preset.
EngineConfig preset_config(std::string_view name);

}  // namespace tradeopt

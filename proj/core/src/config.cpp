#include "tradeopt/config.hpp"

#include <cmath>
#include <numeric>

#include "tradeopt/errors.hpp"

namespace tradeopt {

std::string_view to_string(MutationOp op) noexcept {
  switch (op) {
    case MutationOp::kKeepSame: return "keep_same";
    case MutationOp::kAddOrRemove: return "add_or_remove";
    case MutationOp::kCombine: return "combine";
    case MutationOp::kExchange: return "exchange";
    case MutationOp::kAddFromOther: return "add_from_other";
    case MutationOp::kSpawnNew: return "spawn_new";
  }
  return "?";
}

void EngineConfig::validate() const {
  auto finite = [](double v, const char* field) {
    if (!std::isfinite(v)) throw ValidationError("must be finite", field);
  };
  finite(alpha, "alpha");
  finite(beta, "beta");
  finite(gamma, "gamma");
  finite(filter_cost_threshold, "filter_cost_threshold");
  if (!(playoff_weight > 0.0) || !std::isfinite(playoff_weight)) {
    throw ValidationError("must be > 0", "playoff_weight");
  }
  if (max_players_per_side < 1) throw ValidationError("must be >= 1", "max_players_per_side");
  if (generations < 0) throw ValidationError("must be >= 0", "generations");
  if (max_population < 1) throw ValidationError("must be >= 1", "max_population");
  if (elite_top_n < 0) throw ValidationError("must be >= 0", "elite_top_n");
  if (elite_per_team < 0) throw ValidationError("must be >= 0", "elite_per_team");
  if (!(filter_keep_prob >= 0.0 && filter_keep_prob <= 1.0)) {
    throw ValidationError("must lie in [0, 1]", "filter_keep_prob");
  }
  for (double p : mutation_probs) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw ValidationError("each probability must lie in [0, 1]", "mutation_probs");
    }
  }
  const double total = std::accumulate(mutation_probs.begin(), mutation_probs.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-9) {
    throw ValidationError("probabilities must sum to 1.0 (got " + std::to_string(total) + ")",
                          "mutation_probs");
  }
}

EngineConfig preset_config(std::string_view name) {
  EngineConfig c;
  if (name == "default") return c;
  if (name == "high_playoff") {
    c.playoff_weight = 1.5;
    return c;
  }
  if (name == "user_gain") {
    c.alpha = 1.2;
    return c;
  }
  if (name == "opponent_deemphasis") {
    c.beta = 0.8;
    c.gamma = 0.3;
    return c;
  }
  if (name == "fairness") {
    c.gamma = 0.4;
    return c;
  }
  std::string valid;
  for (auto n : kPresetNames) {
    if (!valid.empty()) valid += ", ";
    valid += n;
  }
  throw ValidationError("unknown preset '" + std::string(name) + "'; valid presets: " + valid,
                        "preset");
}

}  // namespace tradeopt

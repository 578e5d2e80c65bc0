#include "tradeopt/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <unistd.h>

#include "CLI11.hpp"
#include "tradeopt/engine.hpp"
#include "tradeopt/errors.hpp"
#include "tradeopt/ingest.hpp"
#include "tradeopt/oracle.hpp"
#include "tradeopt/scoring.hpp"
#include "tradeopt/wire.hpp"

namespace tradeopt {
namespace {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ConfigFlags {
  std::string preset = "default";
  std::optional<double> alpha, beta, gamma, playoff_weight, threshold, keep_prob;
  std::optional<int> max_players, generations, population, elite_top_n, elite_per_team;
  std::optional<std::uint64_t> seed;
  std::vector<int> playoff_weeks;
  std::vector<double> mutation_probs;
};

// Config field -> flag that sets it, for error messages.
const std::map<std::string, std::string> kFlagForField = {
    {"alpha", "--alpha"},
    {"beta", "--beta"},
    {"gamma", "--gamma"},
    {"playoff_weight", "--playoff-weight"},
    {"max_players_per_side", "--max-players"},
    {"generations", "--generations"},
    {"max_population", "--population"},
    {"elite_top_n", "--elite-top-n"},
    {"elite_per_team", "--elite-per-team"},
    {"filter_cost_threshold", "--threshold"},
    {"filter_keep_prob", "--keep-prob"},
    {"mutation_probs", "--mutation-probs"},
};

void add_config_flags(CLI::App* cmd, ConfigFlags& f) {
  std::string presets;
  for (auto name : kPresetNames) presets += (presets.empty() ? "" : ", ") + std::string(name);
  cmd->add_option("--preset", f.preset, "Hyperparameter preset: " + presets)->capture_default_str();
  cmd->add_option("--alpha", f.alpha, "Weight on the user's weighted gain");
  cmd->add_option("--beta", f.beta, "Weight on the opponent's gain");
  cmd->add_option("--gamma", f.gamma, "Imbalance penalty");
  cmd->add_option("--playoff-weight", f.playoff_weight, "Weight of playoff weeks");
  cmd->add_option("--playoff-weeks", f.playoff_weeks, "Playoff weeks, e.g. 15,16,17")->delimiter(',');
  cmd->add_option("--max-players", f.max_players, "Most players per trade side");
  cmd->add_option("--generations", f.generations, "Generations to evolve");
  cmd->add_option("--population", f.population, "Maximum population size");
  cmd->add_option("--elite-top-n", f.elite_top_n, "Elites carried by overall rank");
  cmd->add_option("--elite-per-team", f.elite_per_team, "Elites carried per opponent");
  cmd->add_option("--threshold", f.threshold, "Filter cost threshold");
  cmd->add_option("--keep-prob", f.keep_prob, "Probability of keeping a trade at or above the threshold");
  cmd->add_option("--mutation-probs", f.mutation_probs, "Six operator probabilities")
      ->delimiter(',')
      ->expected(6);
  cmd->add_option("--seed", f.seed, "Random seed");
}

EngineConfig build_config(const ConfigFlags& f) {
  EngineConfig c;
  try {
    c = preset_config(f.preset);
  } catch (const ValidationError& e) {
    throw ValidationError(e.message(), "--preset");
  }
  if (f.alpha) c.alpha = *f.alpha;
  if (f.beta) c.beta = *f.beta;
  if (f.gamma) c.gamma = *f.gamma;
  if (f.playoff_weight) c.playoff_weight = *f.playoff_weight;
  if (f.max_players) c.max_players_per_side = *f.max_players;
  if (f.generations) c.generations = *f.generations;
  if (f.population) c.max_population = *f.population;
  if (f.elite_top_n) c.elite_top_n = *f.elite_top_n;
  if (f.elite_per_team) c.elite_per_team = *f.elite_per_team;
  if (f.threshold) c.filter_cost_threshold = *f.threshold;
  if (f.keep_prob) c.filter_keep_prob = *f.keep_prob;
  if (f.seed) c.rng_seed = *f.seed;
  if (!f.mutation_probs.empty()) std::copy(f.mutation_probs.begin(), f.mutation_probs.end(), c.mutation_probs.begin());
  try {
    c.validate();
  } catch (const ValidationError& e) {
    const auto it = kFlagForField.find(e.path());
    throw ValidationError(e.message(), it == kFlagForField.end() ? e.path() : it->second);
  }
  return c;
}

LeagueSnapshot load(const std::string& path, const ConfigFlags& f) {
  LeagueSnapshot s = [&] {
    try {
      return load_snapshot_file(path);
    } catch (const ValidationError&) {
      throw;
    } catch (const std::exception& e) {
      throw IoError(e.what());
    }
  }();
  if (f.playoff_weeks.empty()) return s;
  try {
    return s.with_playoff_weeks({f.playoff_weeks.begin(), f.playoff_weeks.end()});
  } catch (const ValidationError& e) {
    throw ValidationError(e.message(), "--playoff-weeks");
  }
}

// Writes through a temporary file in the target directory and renames it
// into place, so a failed run never leaves a partial file behind.
void write_atomically(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  const fs::path dir = target.has_parent_path() ? target.parent_path() : fs::path(".");
  std::string tmpl = (dir / ("." + target.filename().string() + ".XXXXXX")).string();
  const int fd = ::mkstemp(tmpl.data());
  if (fd < 0) throw IoError("cannot create a temporary file next to '" + path + "'");
  ::close(fd);
  {
    std::ofstream os(tmpl, std::ios::binary | std::ios::trunc);
    os << contents;
    os.flush();
    if (!os) {
      std::remove(tmpl.c_str());
      throw IoError("cannot write '" + path + "'");
    }
  }
  std::error_code ec;
  fs::permissions(tmpl, fs::perms::owner_read | fs::perms::owner_write | fs::perms::group_read |
                            fs::perms::others_read, ec);
  fs::rename(tmpl, target, ec);
  if (ec) {
    std::remove(tmpl.c_str());
    throw IoError("cannot write '" + path + "': " + ec.message());
  }
}

std::string fixed(double v, int digits = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  std::string s(buf);
  if (s.find_first_not_of("-0.") == std::string::npos && s[0] == '-') s.erase(0, 1);
  return s;
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : ", ") + s;
  return out;
}

void print_config(std::ostream& out, const std::string& preset, const EngineConfig& c) {
  out << "preset " << preset << ": alpha " << c.alpha << ", beta " << c.beta << ", gamma "
      << c.gamma << ", playoff weight " << c.playoff_weight << ", max players " << c.max_players_per_side
      << ", generations " << c.generations << ", population " << c.max_population << ", seed "
      << c.rng_seed << "\n";
}

void print_rows(std::ostream& out, const std::vector<TradeTableRow>& rows) {
  char line[256];
  std::snprintf(line, sizeof line, "  %-4s %-8s %9s %9s %9s  %s\n", "#", "Opponent", "Cost", "Team A",
                "Team B", "Trade");
  out << line;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    std::snprintf(line, sizeof line, "  %-4zu %-8s %9s %9s %9s  ", i + 1, r.opponent_team_id.c_str(),
                  format_points(r.cost).c_str(), format_points(r.gain_a).c_str(),
                  format_points(r.gain_b).c_str());
    out << line << join(r.giving_names) << " for " << join(r.receiving_names) << "\n";
  }
}

int cmd_optimize(const std::string& snapshot_path, const ConfigFlags& flags, const std::string& out_path,
                 bool quiet, int progress_every, std::ostream& out, std::ostream& err) {
  const EngineConfig config = build_config(flags);
  const LeagueSnapshot snapshot = load(snapshot_path, flags);
  ProgressCallback progress;
  if (!quiet && progress_every > 0) {
    progress = [&](const RunProgress& p) {
      if (p.completed_generations > 0 && p.completed_generations % progress_every == 0) {
        err << "generation " << p.completed_generations << "/" << p.total_generations << ", best cost "
            << (p.best_cost ? fixed(*p.best_cost) : std::string("none")) << "\n";
      }
      return true;
    };
  }
  const RunResult result = run(snapshot, config, progress);
  const auto rows = trade_table_rows(result, snapshot);
  if (!out_path.empty()) write_atomically(out_path, trades_to_csv(rows));

  print_config(out, flags.preset, config);
  out << "evaluations " << result.evaluations << ", final population " << rows.size() << "\n\n";
  out << "Top trades\n";
  print_rows(out, std::vector<TradeTableRow>(rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(
                                                                              std::min<std::size_t>(10, rows.size()))));
  out << "\nBest per opponent\n";
  std::vector<TradeTableRow> best;
  for (const auto& [team, ind] : result.best_per_team) best.push_back(make_table_row(ind, snapshot));
  print_rows(out, best);
  if (!out_path.empty()) out << "\nwrote " << rows.size() << " trades to " << out_path << "\n";
  return kExitOk;
}

std::string describe(const LeagueSnapshot& s, const std::vector<std::string>& ids) {
  std::vector<std::string> parts;
  for (const auto& id : ids) {
    const PlayerProjection* p = s.find_player(id);
    parts.push_back(p ? p->name + " (" + id + ")" : id);
  }
  return join(parts);
}

int cmd_evaluate(const std::string& snapshot_path, const ConfigFlags& flags, const std::string& opponent,
                 const std::vector<std::string>& give, const std::vector<std::string>& receive,
                 const std::string& format, std::ostream& out) {
  const EngineConfig config = build_config(flags);
  const LeagueSnapshot snapshot = load(snapshot_path, flags);
  const Trade trade(opponent, give, receive);
  const TradeEvaluator evaluator(snapshot, config);
  const TradeEvaluation ev = evaluator.evaluate(trade);

  if (format == "json") {
    out << wire::individual_to_json(Individual{trade, ev}, snapshot).dump(2) << "\n";
    return kExitOk;
  }
  out << "trade with " << opponent << ": give " << describe(snapshot, trade.giving()) << "; receive "
      << describe(snapshot, trade.receiving()) << "\n\n";
  char line[128];
  std::snprintf(line, sizeof line, "  %4s %7s %7s %9s %9s\n", "week", "playoff", "weight", "team A", "team B");
  out << line;
  for (int w = snapshot.current_week(); w <= snapshot.final_week(); ++w) {
    std::snprintf(line, sizeof line, "  %4d %7s %7s %9s %9s\n", w, snapshot.playoff_weeks().count(w) ? "*" : "",
                  fixed(evaluator.weights().at(w), 4).c_str(), fixed(ev.weekly_gain_a.at(w), 4).c_str(),
                  fixed(ev.weekly_gain_b.at(w), 4).c_str());
    out << line;
  }
  out << "\n";
  out << "  team A gain (g_a)          " << fixed(ev.gain_a, 4) << "\n";
  out << "  team B gain (g_b)          " << fixed(ev.gain_b, 4) << "\n";
  out << "  weighted team A gain       " << fixed(ev.weighted_gain_a, 4) << "\n";
  out << "  cost                       " << fixed(ev.cost, 4) << "\n";
  out << "  feasible                   " << (ev.feasible ? "yes" : "no") << "\n";
  return kExitOk;
}

int cmd_baseline(const std::string& snapshot_path, const ConfigFlags& flags, std::optional<std::uint64_t> samples,
                 bool exhaustive, bool skip_ga, std::ostream& out) {
  const EngineConfig config = build_config(flags);
  const LeagueSnapshot snapshot = load(snapshot_path, flags);
  std::optional<RunResult> ga;
  if (!skip_ga) ga = run(snapshot, config);
  // Equal budget by default: as many sampled trades as the GA evaluated.
  const std::uint64_t budget = samples ? *samples : (ga ? ga->evaluations : 0);
  const BaselineResult base = random_baseline(snapshot, config, budget, config.rng_seed, exhaustive);

  out << "candidate trades      " << base.candidate_count << "\n";
  if (ga) {
    const auto best = ga->final_population.best_cost();
    out << "GA best cost          " << (best ? fixed(*best) : std::string("none")) << " (" << ga->evaluations
        << " evaluations)\n";
  }
  out << "baseline samples      " << base.samples << " (" << base.feasible_samples << " feasible)\n";
  if (!base.best) {
    out << "baseline best cost    none: no baseline trade found\n";
  } else {
    const TradeTableRow row = make_table_row(*base.best, snapshot);
    out << "baseline best cost    " << fixed(base.best->evaluation.cost) << " (" << row.opponent_team_id << ": "
        << join(row.giving_names) << " for " << join(row.receiving_names) << ")\n";
  }
  if (ga) {
    const auto ga_best = ga->final_population.best_cost();
    const bool ga_wins = ga_best && (!base.best || *ga_best <= base.best->evaluation.cost);
    out << "GA at or below baseline: " << (ga_wins ? "yes" : "no") << "\n";
  }
  return kExitOk;
}

int cmd_oracle(const std::string& snapshot_path, const ConfigFlags& flags, std::uint64_t cap, std::ostream& out) {
  const EngineConfig config = build_config(flags);
  const LeagueSnapshot snapshot = load(snapshot_path, flags);
  const auto best = oracle::brute_force_best_trade(snapshot, config, cap);
  if (!best) {
    out << "no feasible trade\n";
  } else {
    out << fixed(best->evaluation.cost, 6) << " " << best->trade.canonical_key() << "\n";
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fantasy football trade optimizer", "tradeopt"};
  app.require_subcommand(1);

  std::string snapshot_path;
  ConfigFlags flags;
  std::string out_path;
  bool quiet = false;
  int progress_every = 500;

  auto* optimize = app.add_subcommand("optimize", "Search for trades and export them as CSV");
  optimize->add_option("--snapshot", snapshot_path, "Snapshot document")->required();
  add_config_flags(optimize, flags);
  optimize->add_option("--out", out_path, "CSV output path");
  optimize->add_flag("--quiet", quiet, "No progress on stderr");
  optimize->add_option("--progress-every", progress_every, "Generations between progress lines")
      ->capture_default_str();

  std::string opponent;
  std::vector<std::string> give;
  std::vector<std::string> receive;
  std::string format = "text";
  auto* evaluate = app.add_subcommand("evaluate", "Evaluate one trade");
  evaluate->add_option("--snapshot", snapshot_path, "Snapshot document")->required();
  add_config_flags(evaluate, flags);
  evaluate->add_option("--opponent", opponent, "Opponent team id")->required();
  evaluate->add_option("--give", give, "Player ids leaving the user's team")->delimiter(',')->required();
  evaluate->add_option("--receive", receive, "Player ids arriving from the opponent")->delimiter(',')->required();
  evaluate->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));

  std::optional<std::uint64_t> samples;
  bool exhaustive = false;
  bool skip_ga = false;
  auto* baseline = app.add_subcommand("baseline", "Compare the GA with uniform random trades");
  baseline->add_option("--snapshot", snapshot_path, "Snapshot document")->required();
  add_config_flags(baseline, flags);
  baseline->add_option("--samples", samples, "Sampled trades (default: the GA's evaluation count)");
  baseline->add_flag("--exhaustive", exhaustive, "Evaluate every candidate once");
  baseline->add_flag("--skip-ga", skip_ga, "Report the baseline only");
  baseline->add_flag("--quiet", quiet, "Accepted for symmetry with optimize");

  std::uint64_t cap = kDefaultEnumerationCap;
  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force optimum (small leagues)");
  oracle_cmd->group("");  // hidden
  oracle_cmd->add_option("--snapshot", snapshot_path, "Snapshot document")->required();
  add_config_flags(oracle_cmd, flags);
  oracle_cmd->add_option("--cap", cap, "Refuse above this many candidates");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }

  try {
    if (optimize->parsed()) return cmd_optimize(snapshot_path, flags, out_path, quiet, progress_every, out, err);
    if (evaluate->parsed()) return cmd_evaluate(snapshot_path, flags, opponent, give, receive, format, out);
    if (baseline->parsed()) return cmd_baseline(snapshot_path, flags, samples, exhaustive, skip_ga, out);
    if (oracle_cmd->parsed()) return cmd_oracle(snapshot_path, flags, cap, out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const ValidationError& e) {
    err << "error: " << (e.path().empty() ? "" : e.path() + ": ") << e.message() << "\n";
    return kExitValidation;
  } catch (const CandidateCapExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitValidation;
}

}  // namespace tradeopt

#include "tradeopt/service.hpp"

#include <atomic>
#include <cmath>

#include "httplib.h"
#include "tradeopt/errors.hpp"
#include "tradeopt/ingest.hpp"
#include "tradeopt/scoring.hpp"
#include "tradeopt/wire.hpp"

namespace tradeopt {

using wire::json;

std::string_view to_string(RunState state) noexcept {
  switch (state) {
    case RunState::kQueued: return "queued";
    case RunState::kRunning: return "running";
    case RunState::kDone: return "done";
    case RunState::kFailed: return "failed";
  }
  return "unknown";
}

struct TradeService::Run {
  RunStatus status;
  std::atomic<bool> cancel_requested{false};
};

namespace {

HttpResponse error(int status, std::string code, const std::string& message,
                   const std::string& path = {}) {
  json body{{"code", std::move(code)}, {"message", message}};
  if (!path.empty()) body["path"] = path;
  return {status, body.dump()};
}

HttpResponse ok(const json& body, int status = 200) { return {status, body.dump()}; }

json parse_body(const std::string& body) {
  try {
    return json::parse(body);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("malformed JSON: ") + e.what());
  }
}

const json& field(const json& body, const char* key) {
  const auto it = body.find(key);
  if (it == body.end()) throw ValidationError("missing required field", std::string("/") + key);
  return *it;
}

std::string string_field(const json& body, const char* key) {
  const json& v = field(body, key);
  if (!v.is_string()) throw ValidationError("expected a string", std::string("/") + key);
  return v.get<std::string>();
}

void reject_unknown(const json& body, std::initializer_list<std::string_view> allowed) {
  if (!body.is_object()) throw ValidationError("expected an object");
  for (const auto& [key, value] : body.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ValidationError("unknown field '" + key + "'", "/" + key);
    }
  }
}

json nullable(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::vector<std::string> split_path(const std::string& path) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (start <= path.size()) {
    const std::size_t end = path.find('/', start);
    const std::string part = path.substr(start, end == std::string::npos ? std::string::npos : end - start);
    if (!part.empty()) parts.push_back(part);
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return parts;
}

json status_to_json(const RunStatus& s, bool include_result) {
  json out{{"run_id", s.run_id},
           {"snapshot_id", s.snapshot_id},
           {"state", std::string(to_string(s.state))},
           {"progress",
            {{"completed_generations", s.completed_generations},
             {"total_generations", s.total_generations}}},
           {"best_cost_so_far", s.best_cost_so_far ? json(*s.best_cost_so_far) : json(nullptr)},
           {"config", wire::config_to_json(s.config)},
           {"playoff_weeks", s.snapshot ? json(s.snapshot->playoff_weeks()) : json::array()}};
  if (s.state == RunState::kFailed) out["reason"] = s.failure_reason;
  if (include_result && s.result && s.state == RunState::kDone) {
    const RunResult& r = *s.result;
    json trades = json::array();
    for (const auto& ind : r.final_population.individuals) {
      trades.push_back(wire::individual_to_json(ind, *s.snapshot));
    }
    json best = json::object();
    for (const auto& [team, ind] : r.best_per_team) {
      best[team] = wire::individual_to_json(ind, *s.snapshot);
    }
    json history = json::array();
    for (double h : r.history) history.push_back(nullable(h));
    out["result"] = {{"seed", r.seed},
                     {"evaluations", r.evaluations},
                     {"completed_generations", r.completed_generations},
                     {"history", std::move(history)},
                     {"trades", std::move(trades)},
                     {"best_per_team", std::move(best)}};
  }
  return out;
}

}  // namespace

TradeService::TradeService(ServiceOptions options) : options_(options) {
  if (options_.max_concurrent_runs == 0) options_.max_concurrent_runs = 1;
  for (std::size_t i = 0; i < options_.max_concurrent_runs; ++i) {
    workers_.emplace_back([this] { worker_loop(); });
  }
}

TradeService::~TradeService() {
  {
    std::lock_guard lock(mutex_);
    stopping_ = true;
    for (auto& [id, run] : runs_) run->cancel_requested = true;
  }
  changed_.notify_all();
  for (auto& w : workers_) w.join();
}

std::string TradeService::add_snapshot(LeagueSnapshot snapshot) {
  auto stored = std::make_shared<const LeagueSnapshot>(std::move(snapshot));
  std::lock_guard lock(mutex_);
  std::string id = "s" + std::to_string(next_snapshot_++);
  snapshots_.emplace(id, std::move(stored));
  return id;
}

std::shared_ptr<const LeagueSnapshot> TradeService::snapshot(const std::string& id) const {
  std::lock_guard lock(mutex_);
  const auto it = snapshots_.find(id);
  return it == snapshots_.end() ? nullptr : it->second;
}

std::string TradeService::start_run(const std::string& snapshot_id, const EngineConfig& config,
                                    std::optional<std::set<int>> playoff_weeks) {
  config.validate();
  auto base = snapshot(snapshot_id);
  if (!base) throw std::out_of_range("unknown snapshot '" + snapshot_id + "'");
  if (playoff_weeks) {
    base = std::make_shared<const LeagueSnapshot>(base->with_playoff_weeks(std::move(*playoff_weeks)));
  }
  auto run = std::make_shared<Run>();
  run->status.snapshot_id = snapshot_id;
  run->status.config = config;
  run->status.total_generations = config.generations;
  run->status.snapshot = std::move(base);
  std::string id;
  {
    std::lock_guard lock(mutex_);
    id = "r" + std::to_string(next_run_++);
    run->status.run_id = id;
    runs_.emplace(id, run);
    queue_.push_back(run);
  }
  changed_.notify_all();
  return id;
}

std::optional<RunStatus> TradeService::run_status(const std::string& run_id) const {
  std::lock_guard lock(mutex_);
  const auto it = runs_.find(run_id);
  if (it == runs_.end()) return std::nullopt;
  return it->second->status;
}

bool TradeService::cancel_run(const std::string& run_id) {
  std::lock_guard lock(mutex_);
  const auto it = runs_.find(run_id);
  if (it == runs_.end()) return false;
  Run& run = *it->second;
  if (run.status.state == RunState::kDone || run.status.state == RunState::kFailed) return false;
  run.cancel_requested = true;
  run.status.state = RunState::kFailed;
  run.status.failure_reason = "cancelled";
  std::erase(queue_, it->second);
  changed_.notify_all();
  return true;
}

bool TradeService::wait_for_run(const std::string& run_id, std::chrono::milliseconds timeout) const {
  std::unique_lock lock(mutex_);
  const auto it = runs_.find(run_id);
  if (it == runs_.end()) return false;
  const auto run = it->second;
  return changed_.wait_for(lock, timeout, [&] {
    return run->status.state == RunState::kDone || run->status.state == RunState::kFailed;
  });
}

void TradeService::worker_loop() {
  for (;;) {
    std::shared_ptr<Run> run;
    {
      std::unique_lock lock(mutex_);
      changed_.wait(lock, [&] { return stopping_ || !queue_.empty(); });
      if (stopping_) return;
      run = queue_.front();
      queue_.pop_front();
      run->status.state = RunState::kRunning;
    }
    changed_.notify_all();
    execute(run);
    changed_.notify_all();
  }
}

void TradeService::execute(const std::shared_ptr<Run>& run) {
  const auto on_progress = [&](const RunProgress& p) {
    std::lock_guard lock(mutex_);
    if (run->status.state == RunState::kRunning) {
      run->status.completed_generations = std::max(run->status.completed_generations, p.completed_generations);
      run->status.best_cost_so_far = p.best_cost;
    }
    return !run->cancel_requested.load();
  };
  try {
    auto result = std::make_shared<const RunResult>(
        tradeopt::run(*run->status.snapshot, run->status.config, on_progress));
    std::lock_guard lock(mutex_);
    if (run->status.state != RunState::kRunning) return;  // cancelled meanwhile
    if (result->cancelled) {
      run->status.state = RunState::kFailed;
      run->status.failure_reason = "cancelled";
      return;
    }
    run->status.result = std::move(result);
    run->status.completed_generations = run->status.result->completed_generations;
    run->status.best_cost_so_far = run->status.result->final_population.best_cost();
    run->status.state = RunState::kDone;
  } catch (const std::exception& e) {
    std::lock_guard lock(mutex_);
    if (run->status.state != RunState::kRunning) return;
    run->status.state = RunState::kFailed;
    run->status.failure_reason = e.what();
  }
}

HttpResponse TradeService::handle(const HttpRequest& request) {
  const auto parts = split_path(request.path);
  const std::string& m = request.method;
  try {
    if (parts.size() == 1 && parts[0] == "snapshots" && m == "POST") return post_snapshot(request.body);
    if (parts.size() == 3 && parts[0] == "snapshots" && parts[2] == "league" && m == "GET") {
      return get_league(parts[1]);
    }
    if (parts.size() == 1 && parts[0] == "runs" && m == "POST") return post_run(request.body);
    if (parts.size() == 2 && parts[0] == "runs" && m == "GET") return get_run(parts[1]);
    if (parts.size() == 2 && parts[0] == "runs" && m == "DELETE") return delete_run(parts[1]);
    if (parts.size() == 1 && parts[0] == "evaluate" && m == "POST") return post_evaluate(request.body);
  } catch (const UnknownPlayerError& e) {
    return error(422, "unknown_player", e.message(), e.path());
  } catch (const ValidationError& e) {
    return error(400, "invalid_request", e.message(), e.path());
  } catch (const std::exception& e) {
    return error(500, "internal", e.what());
  }
  return error(404, "not_found", "no route for " + m + " " + request.path);
}

HttpResponse TradeService::post_snapshot(const std::string& body) {
  if (body.size() > options_.max_body_bytes) {
    return error(413, "payload_too_large",
                 "snapshot exceeds " + std::to_string(options_.max_body_bytes) + " bytes");
  }
  LeagueSnapshot s = load_snapshot(body);
  json summary = wire::league_summary(s);
  const std::string id = add_snapshot(std::move(s));
  return ok({{"snapshot_id", id}, {"league", std::move(summary)}});
}

HttpResponse TradeService::get_league(const std::string& id) const {
  const auto s = snapshot(id);
  if (!s) return error(404, "not_found", "unknown snapshot '" + id + "'");
  return ok(wire::league_summary(*s));
}

HttpResponse TradeService::post_run(const std::string& body) {
  const json j = parse_body(body);
  reject_unknown(j, {"snapshot_id", "config"});
  const std::string snapshot_id = string_field(j, "snapshot_id");
  const auto base = snapshot(snapshot_id);
  if (!base) return error(404, "not_found", "unknown snapshot '" + snapshot_id + "'", "/snapshot_id");
  wire::RunSettings settings = wire::settings_from_json(j.value("config", json(nullptr)), "/config");
  if (settings.playoff_weeks) {
    try {
      (void)base->with_playoff_weeks(*settings.playoff_weeks);
    } catch (const ValidationError& e) {
      throw ValidationError(e.message(), "/config/playoff_weeks");
    }
  }
  const std::string id = start_run(snapshot_id, settings.config, settings.playoff_weeks);
  return ok(status_to_json(*run_status(id), false), 202);
}

HttpResponse TradeService::get_run(const std::string& id) const {
  const auto status = run_status(id);
  if (!status) return error(404, "not_found", "unknown run '" + id + "'");
  return ok(status_to_json(*status, true));
}

HttpResponse TradeService::delete_run(const std::string& id) {
  if (!run_status(id)) return error(404, "not_found", "unknown run '" + id + "'");
  if (!cancel_run(id)) return error(409, "run_finished", "run '" + id + "' has already finished");
  return ok(status_to_json(*run_status(id), false));
}

HttpResponse TradeService::post_evaluate(const std::string& body) const {
  const json j = parse_body(body);
  reject_unknown(j, {"snapshot_id", "trade", "config"});
  const std::string snapshot_id = string_field(j, "snapshot_id");
  auto s = snapshot(snapshot_id);
  if (!s) return error(404, "not_found", "unknown snapshot '" + snapshot_id + "'", "/snapshot_id");
  const wire::RunSettings settings = wire::settings_from_json(j.value("config", json(nullptr)), "/config");
  const Trade trade = wire::trade_from_json(field(j, "trade"), "/trade");
  if (settings.playoff_weeks) {
    s = std::make_shared<const LeagueSnapshot>(s->with_playoff_weeks(*settings.playoff_weeks));
  }
  TradeEvaluation ev;
  try {
    ev = evaluate_trade(trade, *s, settings.config);
  } catch (const UnknownPlayerError&) {
    throw;
  } catch (const ValidationError& e) {
    throw ValidationError(e.message(), "/trade/" + e.path());
  }
  return ok(wire::individual_to_json(Individual{trade, std::move(ev)}, *s));
}

void TradeService::mount(httplib::Server& server) {
  server.set_payload_max_length(options_.max_body_bytes);
  const auto forward = [this](const httplib::Request& req, httplib::Response& res) {
    const HttpResponse r = handle({req.method, req.path, req.body});
    res.status = r.status;
    res.set_content(r.body, "application/json");
  };
  server.Post("/snapshots", forward);
  server.Get(R"(/snapshots/([^/]+)/league)", forward);
  server.Post("/runs", forward);
  server.Get(R"(/runs/([^/]+))", forward);
  server.Delete(R"(/runs/([^/]+))", forward);
  server.Post("/evaluate", forward);
  server.set_error_handler([](const httplib::Request& req, httplib::Response& res) {
    if (!res.body.empty()) return;
    HttpResponse r;
    if (res.status == 413) {
      r = error(413, "payload_too_large", "request body too large");
    } else if (res.status == 404) {
      r = error(404, "not_found", "no route for " + req.method + " " + req.path);
    } else {
      r = error(res.status, "http_error", "request failed");
    }
    res.set_content(r.body, "application/json");
  });
}

}  // namespace tradeopt

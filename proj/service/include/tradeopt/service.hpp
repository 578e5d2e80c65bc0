#pragma once

// HTTP facade over the engine.
//
//   POST   /snapshots              snapshot document -> {snapshot_id, league}
//   GET    /snapshots/{id}/league  league summary
//   POST   /runs                   {snapshot_id, config} -> run handle (202)
//   GET    /runs/{id}              run handle, plus trades once done
//   DELETE /runs/{id}              cancel; the run ends failed/"cancelled"
//   POST   /evaluate               {snapshot_id, trade, config} -> evaluation
//
// Errors are {"code", "message", "path"?}. Everything lives in memory. Runs
// execute on a fixed pool of worker threads; extra runs wait in FIFO order.

#include <condition_variable>
#include <chrono>
#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "tradeopt/domain.hpp"
#include "tradeopt/engine.hpp"

namespace httplib {
class Server;
}

namespace tradeopt {

inline constexpr std::size_t kMaxSnapshotBytes = 10 * 1024 * 1024;

struct ServiceOptions {
  std::size_t max_concurrent_runs = 2;
  std::size_t max_body_bytes = kMaxSnapshotBytes;
};

enum class RunState { kQueued, kRunning, kDone, kFailed };
std::string_view to_string(RunState state) noexcept;

struct RunStatus {
  std::string run_id;
  std::string snapshot_id;
  RunState state = RunState::kQueued;
  int completed_generations = 0;
  int total_generations = 0;
  std::optional<double> best_cost_so_far;
  std::string failure_reason;
  EngineConfig config;
  std::shared_ptr<const LeagueSnapshot> snapshot;  // as run, with any playoff override
  std::shared_ptr<const RunResult> result;         // set once done
};

struct HttpRequest {
  std::string method;
  std::string path;
  std::string body;
};

struct HttpResponse {
  int status = 200;
  std::string body;  // JSON
};

class TradeService {
 public:
  explicit TradeService(ServiceOptions options = {});
  ~TradeService();  // cancels outstanding runs and joins the workers

  TradeService(const TradeService&) = delete;
  TradeService& operator=(const TradeService&) = delete;

  // Transport-independent dispatch; the HTTP binding forwards here.
  HttpResponse handle(const HttpRequest& request);

  // Registers every route on `server` and sets its payload limit.
  void mount(httplib::Server& server);

  std::string add_snapshot(LeagueSnapshot snapshot);
  std::shared_ptr<const LeagueSnapshot> snapshot(const std::string& id) const;
  std::string start_run(const std::string& snapshot_id, const EngineConfig& config,
                        std::optional<std::set<int>> playoff_weeks = std::nullopt);
  std::optional<RunStatus> run_status(const std::string& run_id) const;
  // False for an unknown or already finished run.
  bool cancel_run(const std::string& run_id);
  // Blocks until the run is done or failed, or the timeout passes.
  bool wait_for_run(const std::string& run_id, std::chrono::milliseconds timeout) const;

 private:
  struct Run;

  HttpResponse post_snapshot(const std::string& body);
  HttpResponse get_league(const std::string& id) const;
  HttpResponse post_run(const std::string& body);
  HttpResponse get_run(const std::string& id) const;
  HttpResponse delete_run(const std::string& id);
  HttpResponse post_evaluate(const std::string& body) const;

  void worker_loop();
  void execute(const std::shared_ptr<Run>& run);

  ServiceOptions options_;
  mutable std::mutex mutex_;
  mutable std::condition_variable changed_;
  std::map<std::string, std::shared_ptr<const LeagueSnapshot>> snapshots_;
  std::map<std::string, std::shared_ptr<Run>> runs_;
  std::deque<std::shared_ptr<Run>> queue_;
  std::uint64_t next_snapshot_ = 1;
  std::uint64_t next_run_ = 1;
  bool stopping_ = false;
  std::vector<std::thread> workers_;
};

}  // namespace tradeopt

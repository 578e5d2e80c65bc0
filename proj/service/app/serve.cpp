// tradeopt-serve: HTTP service over the trade engine.
//
// Binds 127.0.0.1:8080 unless told otherwise by --host/--port or the
// TRADEOPT_HOST/TRADEOPT_PORT environment variables (flags win).

#include <csignal>
#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"
#include "httplib.h"
#include "tradeopt/service.hpp"

namespace {
httplib::Server* g_server = nullptr;
void on_signal(int) {
  if (g_server) g_server->stop();
}
}  // namespace

int main(int argc, char** argv) {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::size_t workers = 2;

  CLI::App app{"Trade optimizer HTTP service"};
  app.add_option("--host", host, "Bind address")->envname("TRADEOPT_HOST")->capture_default_str();
  app.add_option("--port", port, "Bind port")->envname("TRADEOPT_PORT")->check(CLI::Range(1, 65535))->capture_default_str();
  app.add_option("--workers", workers, "Concurrent runs; extra runs queue")
      ->envname("TRADEOPT_WORKERS")
      ->check(CLI::Range(1, 64))
      ->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  tradeopt::TradeService service(tradeopt::ServiceOptions{workers, tradeopt::kMaxSnapshotBytes});
  httplib::Server server;
  service.mount(server);
  g_server = &server;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);

  std::cerr << "listening on http://" << host << ":" << port << "\n";
  if (!server.listen(host, port)) {
    std::cerr << "error: cannot bind " << host << ":" << port << "\n";
    return 3;
  }
  return 0;
}

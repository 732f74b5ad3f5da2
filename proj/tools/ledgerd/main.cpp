// spectrum-ledgerd: serves the ledger over HTTP/JSON.

#include <atomic>
#include <csignal>
#include <cstdlib>
#include <iostream>
#include <thread>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "spectrum/error.hpp"
#include "spectrum/service/api.hpp"
#include "spectrum/service/config.hpp"
#include "spectrum/service/http_server.hpp"

using namespace spectrum;

int main(int argc, char** argv) {
  CLI::App app{"Spectrum lease ledger service"};
  std::string config_path;
  std::optional<int> port;
  std::optional<std::string> host;
  std::string log_level = "info";
  app.add_option("--config", config_path, "Config JSON (default: $SPECTRUM_LEDGER_CONFIG)");
  app.add_option("--port", port, "Listen port, overrides the config (0 = any free port)")->check(CLI::Range(0, 65535));
  app.add_option("--host", host, "Listen address, overrides the config");
  app.add_option("--log-level", log_level, "trace, debug, info, warn, error")
      ->check(CLI::IsMember({"trace", "debug", "info", "warn", "error"}));
  CLI11_PARSE(app, argc, argv);

  spdlog::set_default_logger(spdlog::stderr_color_mt("ledgerd"));
  spdlog::set_level(spdlog::level::from_str(log_level));
  if (config_path.empty()) {
    if (const char* env = std::getenv(service::kConfigEnvVar)) config_path = env;
  }
  if (config_path.empty()) {
    std::cerr << "no config: pass --config or set " << service::kConfigEnvVar << "\n";
    return 2;
  }

  // Handle SIGINT/SIGTERM on a dedicated thread; block them everywhere else.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  service::ServiceConfig config;
  std::unique_ptr<service::ApiService> api;
  try {
    config = service::load_service_config(config_path);
    if (port) config.port = static_cast<std::uint16_t>(*port);
    if (host) config.host = *host;
    api = std::make_unique<service::ApiService>(config);
  } catch (const LedgerError& e) {
    spdlog::critical("refusing to start: {}: {}", error_name(e.code()), e.what());
    return 1;
  }
  if (api->recovered_dropped_bytes() > 0) {
    spdlog::warn("dropped {} bytes of unacknowledged journal tail", api->recovered_dropped_bytes());
  }
  if (api->recovered_snapshot_seq()) spdlog::info("loaded snapshot at seq {}", *api->recovered_snapshot_seq());
  spdlog::info("state at seq {}, hash {}", api->ledger().last_seq(), api->ledger().state_hash());

  service::HttpServer server(*api);
  int bound = server.bind(config.host, config.port);
  if (bound < 0) {
    spdlog::critical("cannot listen on {}:{}", config.host, config.port);
    return 1;
  }
  // Parsed by scripts and tests that start the server on port 0.
  std::cout << "listening on " << config.host << ":" << bound << std::endl;

  std::atomic<bool> signalled{false};
  std::thread waiter([&] {
    int sig = 0;
    sigwait(&signals, &sig);
    signalled = true;
    spdlog::info("signal {}, shutting down", sig);
    server.stop();
  });
  server.serve();
  // serve() can also end on its own; wake the waiter so it can exit.
  if (!signalled) pthread_kill(waiter.native_handle(), SIGTERM);
  waiter.join();
  return 0;
}

#pragma once

#include <memory>
#include <string>

#include "spectrum/service/api.hpp"

namespace httplib {
class Server;
}

namespace spectrum::service {

/// cpp-httplib front end for an ApiService. All routes go through
/// ApiService::handle; ui_dir, when set, is served under /ui.
class HttpServer {
 public:
  explicit HttpServer(ApiService& api);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds without serving. Port 0 picks a free port. Returns the bound
  /// port, or -1 on failure.
  int bind(const std::string& host, int port);
  /// Serves until stop(). Call after bind().
  bool serve();
  void stop();

 private:
  ApiService& api_;
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace spectrum::service

#include "spectrum/service/http_server.hpp"

#include <httplib.h>
#include <spdlog/spdlog.h>

namespace spectrum::service {

namespace {

void set_cors(httplib::Response& res) {
  res.set_header("Access-Control-Allow-Origin", "*");
  res.set_header("Access-Control-Allow-Headers", std::string("Content-Type, ") + kCallerHeader);
  res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
}

}  // namespace

HttpServer::HttpServer(ApiService& api) : api_(api), server_(std::make_unique<httplib::Server>()) {
  auto handler = [this](const httplib::Request& req, httplib::Response& res) {
    ApiRequest request;
    request.method = req.method;
    request.path = req.path;
    for (const auto& [key, value] : req.params) request.query.emplace(key, value);
    if (req.has_header(kCallerHeader)) request.caller = req.get_header_value(kCallerHeader);
    request.body = req.body;

    ApiResponse response = api_.handle(request);
    set_cors(res);
    res.status = response.status;
    res.set_content(response.body.dump(), "application/json");
    spdlog::debug("{} {} -> {}", req.method, req.path, response.status);
  };
  server_->Get(".*", handler);
  server_->Post(".*", handler);
  server_->Options(".*", [](const httplib::Request&, httplib::Response& res) {
    set_cors(res);
    res.status = 204;
  });

  const auto& ui_dir = api_.config().ui_dir;
  if (!ui_dir.empty() && !server_->set_mount_point("/ui", ui_dir.string())) {
    spdlog::warn("ui_dir {} is not a directory; /ui disabled", ui_dir.string());
  }
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  if (port == 0) return server_->bind_to_any_port(host);
  return server_->bind_to_port(host, port) ? port : -1;
}

bool HttpServer::serve() { return server_->listen_after_bind(); }

void HttpServer::stop() {
  if (server_ && server_->is_running()) server_->stop();
}

}  // namespace spectrum::service

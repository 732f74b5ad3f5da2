#include "spectrum/client/transport.hpp"

#include <httplib.h>

#include "spectrum/service/api.hpp"

namespace spectrum::client {

using nlohmann::ordered_json;

std::string Reply::error_code() const {
  auto it = body.find("error");
  return it == body.end() ? std::string() : it->value("code", std::string());
}

std::string Reply::error_message() const {
  auto it = body.find("error");
  return it == body.end() ? std::string() : it->value("message", std::string());
}

namespace {

Reply to_reply(int status, const std::string& text) {
  Reply reply;
  reply.status = status;
  reply.body = ordered_json::parse(text, nullptr, false);
  if (reply.body.is_discarded() || !reply.body.is_object() || !reply.body.contains("ok")) {
    throw TransportError("HTTP " + std::to_string(status) + ": response is not a ledger envelope");
  }
  return reply;
}

class HttpTransport : public Transport {
 public:
  explicit HttpTransport(const std::string& url) : client_(url) {
    if (!client_.is_valid()) throw TransportError("invalid server URL '" + url + "'");
    client_.set_connection_timeout(5);
    client_.set_read_timeout(30);
  }

  Reply send(const Call& call, const std::optional<std::string>& caller) override {
    httplib::Headers headers;
    if (caller) headers.emplace(service::kCallerHeader, *caller);
    httplib::Result result = call.method == "POST"
                                 ? client_.Post(call.path, headers, call.body.dump(), "application/json")
                                 : client_.Get(call.path, headers);
    if (!result) throw TransportError(call.method + " " + call.path + ": " + httplib::to_string(result.error()));
    return to_reply(result->status, result->body);
  }

 private:
  httplib::Client client_;
};

class InProcessTransport : public Transport {
 public:
  explicit InProcessTransport(service::ApiService& api) : api_(api) {}

  Reply send(const Call& call, const std::optional<std::string>& caller) override {
    service::ApiRequest request;
    request.method = call.method;
    request.caller = caller;
    auto q = call.path.find('?');
    request.path = call.path.substr(0, q);
    if (q != std::string::npos) {
      httplib::Params params;
      httplib::detail::parse_query_text(call.path.substr(q + 1), params);
      for (const auto& [k, v] : params) request.query.emplace(k, v);
    }
    if (call.method == "POST") request.body = call.body.dump();
    auto response = api_.handle(request);
    return Reply{response.status, std::move(response.body)};
  }

 private:
  service::ApiService& api_;
};

}  // namespace

std::unique_ptr<Transport> make_http_transport(const std::string& server_url) {
  return std::make_unique<HttpTransport>(server_url);
}

std::unique_ptr<Transport> make_in_process_transport(service::ApiService& api) {
  return std::make_unique<InProcessTransport>(api);
}

}  // namespace spectrum::client

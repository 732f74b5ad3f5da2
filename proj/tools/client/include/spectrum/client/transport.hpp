#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

namespace spectrum::service {
class ApiService;
}

namespace spectrum::client {

/// Connection refused, timeout, or a reply that is not the service's JSON
/// envelope.
class TransportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Reply {
  int status = 0;
  nlohmann::ordered_json body;

  bool ok() const { return body.value("ok", false); }
  const nlohmann::ordered_json& data() const { return body.at("data"); }
  std::string error_code() const;
  std::string error_message() const;
};

struct Call {
  std::string method;  // GET or POST
  std::string path;    // may include a query string
  nlohmann::ordered_json body;  // POST only
};

class Transport {
 public:
  virtual ~Transport() = default;
  virtual Reply send(const Call& call, const std::optional<std::string>& caller) = 0;
};

/// HTTP client for a running spectrum-ledgerd, e.g. "http://127.0.0.1:8545".
std::unique_ptr<Transport> make_http_transport(const std::string& server_url);

/// Calls straight into an ApiService in the same process.
std::unique_ptr<Transport> make_in_process_transport(service::ApiService& api);

}  // namespace spectrum::client

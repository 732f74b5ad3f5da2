#include "spectrum/client/operations.hpp"

#include <map>

namespace spectrum::client {

using nlohmann::ordered_json;

namespace {

struct Shape {
  const char* method;
  const char* prefix;  // path before the id segment
  const char* id_key;  // nullptr: no path parameter
  const char* suffix;  // path after the id segment
};

const std::map<std::string, Shape>& shapes() {
  static const std::map<std::string, Shape> table = {
      {"faucet", {"POST", "/admin/faucet", nullptr, ""}},
      {"mint", {"POST", "/admin/mint", nullptr, ""}},
      {"advance-time", {"POST", "/admin/advance-time", nullptr, ""}},
      {"set-user", {"POST", "/nfst/", "tokenId", "/set-user"}},
      {"start", {"POST", "/auction/", "tokenId", "/start"}},
      {"bid", {"POST", "/auction/", "tokenId", "/bid"}},
      {"end", {"POST", "/auction/", "tokenId", "/end"}},
      {"withdraw", {"POST", "/auction/", "tokenId", "/withdraw"}},
      {"idle", {"GET", "/spectrum/idle", nullptr, ""}},
      {"info", {"GET", "/nfst/", "tokenId", ""}},
      {"auction", {"GET", "/auction/", "tokenId", ""}},
      {"account", {"GET", "/accounts/", "address", ""}},
      {"accounts", {"GET", "/accounts", nullptr, ""}},
      {"events", {"GET", "/events", nullptr, ""}},
      {"state-hash", {"GET", "/state-hash", nullptr, ""}},
      {"health", {"GET", "/healthz", nullptr, ""}},
  };
  return table;
}

std::string scalar(const ordered_json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

}  // namespace

Call make_call(const std::string& op, const ordered_json& params) {
  auto it = shapes().find(op);
  if (it == shapes().end()) throw UnknownOperation("unknown operation '" + op + "'");
  const Shape& shape = it->second;
  if (!params.is_null() && !params.is_object()) throw UnknownOperation(op + ": params must be an object");

  Call call{shape.method, shape.prefix, ordered_json::object()};
  if (shape.id_key) {
    auto id = params.find(shape.id_key);
    if (id == params.end()) throw UnknownOperation(op + ": missing '" + shape.id_key + "'");
    call.path += scalar(*id) + shape.suffix;
  }
  if (op == "events" && params.contains("since")) call.path += "?since=" + scalar(params.at("since"));
  if (call.method == "POST" && params.is_object()) {
    for (const auto& [key, value] : params.items()) {
      if (!shape.id_key || key != shape.id_key) call.body[key] = value;
    }
  }
  return call;
}

const std::vector<std::string>& operation_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, _] : shapes()) out.push_back(name);
    return out;
  }();
  return names;
}

}  // namespace spectrum::client

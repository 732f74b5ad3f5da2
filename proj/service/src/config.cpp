#include "spectrum/service/config.hpp"

#include <fstream>

#include "spectrum/error.hpp"

namespace spectrum::service {

namespace {

std::filesystem::path path_field(const nlohmann::json& doc, const char* key, const std::filesystem::path& base) {
  auto it = doc.find(key);
  if (it == doc.end() || it->is_null()) return {};
  if (!it->is_string()) fail(ErrorCode::InvalidArgument, std::string("config: ") + key + " must be a string");
  std::filesystem::path p = it->get<std::string>();
  if (p.empty() || p.is_absolute() || base.empty()) return p;
  return base / p;
}

}  // namespace

ServiceConfig service_config_from_json(const nlohmann::json& doc, const std::filesystem::path& base_dir) {
  if (!doc.is_object()) fail(ErrorCode::InvalidArgument, "config must be a JSON object");
  ServiceConfig config;
  config.genesis = genesis_from_json(doc);
  if (auto it = doc.find("host"); it != doc.end()) {
    if (!it->is_string()) fail(ErrorCode::InvalidArgument, "config: host must be a string");
    config.host = it->get<std::string>();
  }
  if (auto it = doc.find("port"); it != doc.end()) {
    if (!it->is_number_unsigned() || it->get<std::uint64_t>() > 65535)
      fail(ErrorCode::InvalidArgument, "config: port must be 0..65535");
    config.port = static_cast<std::uint16_t>(it->get<std::uint64_t>());
  }
  if (auto it = doc.find("snapshot_every"); it != doc.end()) {
    if (!it->is_number_unsigned() || it->get<std::uint64_t>() == 0)
      fail(ErrorCode::InvalidArgument, "config: snapshot_every must be >= 1");
    config.snapshot_every = it->get<std::uint64_t>();
  }
  config.journal_path = path_field(doc, "journal_path", base_dir);
  config.snapshot_path = path_field(doc, "snapshot_path", base_dir);
  config.ui_dir = path_field(doc, "ui_dir", base_dir);
  return config;
}

ServiceConfig load_service_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::InvalidArgument, "cannot open config " + path.string());
  auto doc = nlohmann::json::parse(in, nullptr, false);
  if (doc.is_discarded()) fail(ErrorCode::InvalidArgument, "config " + path.string() + " is not valid JSON");
  return service_config_from_json(doc, path.parent_path());
}

}  // namespace spectrum::service

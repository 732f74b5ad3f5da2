#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "spectrum/error.hpp"
#include "spectrum/journal.hpp"
#include "spectrum/ledger.hpp"
#include "spectrum/service/config.hpp"
#include "spectrum/service/persistence.hpp"

namespace spectrum::service {

inline constexpr const char* kCallerHeader = "X-Caller-Address";

struct ApiRequest {
  std::string method;  // "GET" or "POST"
  std::string path;
  std::map<std::string, std::string> query;
  std::optional<std::string> caller;  // raw header value
  std::string body;
};

/// Body is always {"ok": bool, "seq": n, "data": ..} or
/// {"ok": false, "seq": n, "error": {"code": .., "message": ..}}.
struct ApiResponse {
  int status = 200;
  nlohmann::ordered_json body;
};

int http_status_for(ErrorCode code);

/// The ledger behind its HTTP/JSON surface, without any transport. Each
/// request maps to exactly one ledger command or one snapshot read.
class ApiService {
 public:
  /// Recovers state from the configured journal and snapshot.
  /// Throws LedgerError(CorruptJournal | GenesisMismatch | PersistenceFailure).
  explicit ApiService(ServiceConfig config, Ledger::WallClock wall_clock = {});

  ApiResponse handle(const ApiRequest& request);

  Ledger& ledger() { return *ledger_; }
  const ServiceConfig& config() const { return config_; }
  const std::optional<std::uint64_t>& recovered_snapshot_seq() const { return recovered_snapshot_seq_; }
  std::size_t recovered_dropped_bytes() const { return recovered_dropped_bytes_; }

 private:
  void after_commit();

  ServiceConfig config_;
  std::unique_ptr<FileJournal> journal_;
  std::unique_ptr<Ledger> ledger_;
  std::optional<std::uint64_t> recovered_snapshot_seq_;
  std::size_t recovered_dropped_bytes_ = 0;

  std::mutex snapshot_mutex_;
  SnapshotPolicy snapshot_policy_;
};

}  // namespace spectrum::service

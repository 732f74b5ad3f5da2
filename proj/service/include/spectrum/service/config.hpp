#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "spectrum/genesis.hpp"

namespace spectrum::service {

/// Genesis plus service settings. Both live in the same JSON file:
///   {"sma_address": "0x..", "clock_mode": "sim", "genesis_time": 1702528512,
///    "min_alloc_mhz": 20, "host": "127.0.0.1", "port": 8545,
///    "journal_path": "data/journal.jsonl", "snapshot_path": "data/snapshot.json",
///    "snapshot_every": 100, "ui_dir": ""}
/// Relative paths resolve against the config file's directory.
struct ServiceConfig {
  GenesisConfig genesis;
  std::string host = "127.0.0.1";
  std::uint16_t port = 8545;
  std::filesystem::path journal_path;   // empty: keep events in memory only
  std::filesystem::path snapshot_path;  // empty: no snapshots
  std::uint64_t snapshot_every = 100;
  std::filesystem::path ui_dir;         // empty: no static mount
};

inline constexpr const char* kConfigEnvVar = "SPECTRUM_LEDGER_CONFIG";

/// Throws LedgerError(InvalidArgument) on bad values.
ServiceConfig service_config_from_json(const nlohmann::json& doc,
                                       const std::filesystem::path& base_dir = {});
ServiceConfig load_service_config(const std::filesystem::path& path);

}  // namespace spectrum::service

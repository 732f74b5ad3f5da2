#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "spectrum/client/transport.hpp"
#include "spectrum/genesis.hpp"

namespace spectrum::client {

class ScenarioParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Scenario file:
///   {"name": "...",
///    "genesis": {...},                      optional, used for in-process runs
///    "accounts": {"SU1": "0x5B38...", ...}, aliases, referenced as "@SU1"
///    "steps": [{"caller": "@SU1", "op": "bid", "params": {"tokenId": 1, "amountEther": "2.0"},
///               "expect": {"error": "BidTooLow"} | {"fields": {"highestBidder": "@SU1"}}}]}
/// A step without "expect" must succeed. Field paths are dotted
/// ("refunds.0.amount") and address and ether strings compare by value.
struct Step {
  std::optional<std::string> caller;
  std::string op;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  std::optional<std::string> expect_error;
  nlohmann::ordered_json expect_fields = nlohmann::ordered_json::object();
  std::string note;
};

struct Scenario {
  std::string name;
  std::optional<GenesisConfig> genesis;
  std::map<std::string, std::string> accounts;
  std::vector<Step> steps;
};

/// Resolves aliases and validates ops. Throws ScenarioParseError.
Scenario parse_scenario(const nlohmann::ordered_json& doc);
Scenario load_scenario(const std::filesystem::path& path);

struct StepResult {
  std::size_t index = 0;
  std::string op;
  bool passed = false;
  std::string detail;
};

struct ScenarioReport {
  std::string name;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t skipped = 0;  // steps after the first failure
  std::string final_hash;
  std::optional<std::string> transport_error;
  std::vector<StepResult> steps;

  bool success() const { return failed == 0 && !transport_error; }
  /// 0 all passed, 1 assertion failure, 2 transport error.
  int exit_code() const { return transport_error ? 2 : failed ? 1 : 0; }
  nlohmann::ordered_json to_json() const;
  std::string summary() const;
};

/// Runs steps in order and stops at the first failed expectation.
ScenarioReport run_scenario(const Scenario& scenario, Transport& transport);

/// Looks up a dotted path ("refunds.0.bidder") in `data`.
const nlohmann::ordered_json* find_path(const nlohmann::ordered_json& data, const std::string& path);
/// Value equality with address and ether strings compared by value.
bool values_match(const nlohmann::ordered_json& expected, const nlohmann::ordered_json& actual);

}  // namespace spectrum::client

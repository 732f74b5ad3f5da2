// spectrum-cli: operator and scenario client for spectrum-ledgerd.
//
// Exit codes: 0 success, 1 the service rejected a command or a scenario
// expectation failed, 2 transport, usage or parse error.

#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "spectrum/client/operations.hpp"
#include "spectrum/client/scenario.hpp"
#include "spectrum/client/transport.hpp"
#include "spectrum/client/verify.hpp"
#include "spectrum/error.hpp"
#include "spectrum/service/api.hpp"
#include "spectrum/service/config.hpp"

using namespace spectrum;
using nlohmann::ordered_json;

namespace {

constexpr int kExitRejected = 1;
constexpr int kExitTransport = 2;

std::string cell(const ordered_json& v) {
  if (v.is_string()) return v.get<std::string>().empty() ? "-" : v.get<std::string>();
  return v.dump();
}

void print_table(std::ostream& out, const ordered_json& rows, const std::string& indent) {
  std::vector<std::string> columns;
  for (const auto& [key, value] : rows.front().items()) {
    // Wei companions only clutter the table; --json keeps them.
    if (key.size() > 3 && key.compare(key.size() - 3, 3, "Wei") == 0) continue;
    if (!value.is_structured()) columns.push_back(key);
  }
  std::vector<std::size_t> width;
  for (const auto& c : columns) {
    std::size_t w = c.size();
    for (const auto& row : rows) w = std::max(w, cell(row.value(c, ordered_json())).size());
    width.push_back(w);
  }
  out << indent;
  for (std::size_t i = 0; i < columns.size(); ++i) out << std::left << std::setw(int(width[i]) + 2) << columns[i];
  out << "\n";
  for (const auto& row : rows) {
    out << indent;
    for (std::size_t i = 0; i < columns.size(); ++i) {
      out << std::left << std::setw(int(width[i]) + 2) << cell(row.value(columns[i], ordered_json()));
    }
    out << "\n";
  }
}

void print_data(std::ostream& out, const ordered_json& data, const std::string& indent = "") {
  if (!data.is_object()) {
    out << indent << cell(data) << "\n";
    return;
  }
  for (const auto& [key, value] : data.items()) {
    if (value.is_array() && (value.empty() || value.front().is_object())) {
      if (value.empty()) {
        out << indent << key << ": (none)\n";
      } else {
        out << indent << key << ":\n";
        print_table(out, value, indent + "  ");
      }
    } else if (value.is_object()) {
      out << indent << key << ":\n";
      print_data(out, value, indent + "  ");
    } else if (value.is_array()) {
      out << indent << key << ": " << value.dump() << "\n";
    } else {
      out << indent << key << ": " << cell(value) << "\n";
    }
  }
}

struct Globals {
  std::string server;
  std::string config_path;
  std::optional<std::string> caller;
  bool json = false;
};

std::optional<service::ServiceConfig> load_config(const Globals& g) {
  std::string path = g.config_path;
  if (path.empty()) {
    if (const char* env = std::getenv(service::kConfigEnvVar)) path = env;
  }
  if (path.empty()) return std::nullopt;
  return service::load_service_config(path);
}

std::string server_url(const Globals& g) {
  if (!g.server.empty()) return g.server;
  if (auto config = load_config(g)) {
    std::string host = config->host == "0.0.0.0" ? "127.0.0.1" : config->host;
    return "http://" + host + ":" + std::to_string(config->port);
  }
  return "http://127.0.0.1:8545";
}

int run_op(const Globals& g, const std::string& op, const ordered_json& params) {
  try {
    auto transport = client::make_http_transport(server_url(g));
    auto reply = transport->send(client::make_call(op, params), g.caller);
    if (g.json) {
      std::cout << reply.body.dump(2) << "\n";
    } else if (reply.ok()) {
      print_data(std::cout, reply.data());
    } else {
      std::cerr << "error: " << reply.error_code() << ": " << reply.error_message() << "\n";
    }
    return reply.ok() ? 0 : kExitRejected;
  } catch (const client::TransportError& e) {
    std::cerr << "transport error: " << e.what() << "\n";
    return kExitTransport;
  }
}

int run_scenario_command(const Globals& g, const std::string& file, bool in_process) {
  try {
    auto scenario = client::load_scenario(file);
    client::ScenarioReport report;
    if (in_process) {
      service::ServiceConfig config;
      if (auto loaded = load_config(g)) {
        config.genesis = loaded->genesis;
      } else if (scenario.genesis) {
        config.genesis = *scenario.genesis;
      } else {
        std::cerr << "--in-process needs --config or a 'genesis' object in the scenario\n";
        return kExitTransport;
      }
      service::ApiService api(config);
      auto transport = client::make_in_process_transport(api);
      report = client::run_scenario(scenario, *transport);
    } else {
      auto transport = client::make_http_transport(server_url(g));
      report = client::run_scenario(scenario, *transport);
    }
    if (g.json) {
      std::cout << report.to_json().dump(2) << "\n";
    } else {
      std::cout << report.summary();
    }
    return report.exit_code();
  } catch (const client::ScenarioParseError& e) {
    std::cerr << "scenario error: " << e.what() << "\n";
    return kExitTransport;
  } catch (const client::TransportError& e) {
    std::cerr << "transport error: " << e.what() << "\n";
    return kExitTransport;
  }
}

int verify_journal_command(const Globals& g, const std::string& path) {
  auto config = load_config(g);
  if (!config) {
    std::cerr << "verify-journal needs the genesis config: pass --config or set " << service::kConfigEnvVar
              << "\n";
    return kExitTransport;
  }
  auto result = client::verify_journal(path, config->genesis);
  if (g.json) {
    ordered_json out;
    out["valid"] = result.valid;
    out["eventCount"] = result.event_count;
    out["finalStateHash"] = result.final_hash;
    if (!result.valid) out["error"] = {{"code", result.error_code}, {"message", result.error}};
    std::cout << out.dump(2) << "\n";
  } else if (result.valid) {
    std::cout << "valid: true\nevents: " << result.event_count << "\nstateHash: " << result.final_hash << "\n";
  } else {
    std::cout << "valid: false\nerror: " << result.error_code << ": " << result.error << "\n";
  }
  return result.valid ? 0 : kExitRejected;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectrum lease ledger client"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--server", g.server, "Service URL (default: from config, else http://127.0.0.1:8545)");
  app.add_option("--config", g.config_path, "Config JSON (default: $SPECTRUM_LEDGER_CONFIG)");
  app.add_option("--caller", g.caller, "Caller address sent as X-Caller-Address");
  app.add_flag("--json", g.json, "Print raw JSON");

  std::string op;
  ordered_json params = ordered_json::object();
  std::function<int()> action;

  auto direct = [&](const char* name, const char* help) {
    auto* sub = app.add_subcommand(name, help);
    sub->callback([&, name] {
      op = name;
      action = [&] { return run_op(g, op, params); };
    });
    return sub;
  };
  // Options are stored as strings and passed through unchanged: the service
  // does all validation and reports errors in its own words.
  std::map<std::string, std::string> s;
  auto opt = [&](CLI::App* sub, const std::string& flag, const std::string& key, const char* help,
                 bool required = true) {
    auto* o = sub->add_option(flag, s[key], help);
    if (required) o->required();
    return o;
  };
  auto param_strings = [&](std::initializer_list<const char*> keys) {
    for (const char* key : keys) {
      if (!s[key].empty()) params[key] = s[key];
    }
  };

  auto* faucet = direct("faucet", "Credit currency to an account (SMA only)");
  opt(faucet, "to", "to", "Recipient address");
  opt(faucet, "--amount", "amountEther", "Amount in ether, e.g. 5 or 2.5");
  opt(faucet, "--role", "role", "Label: PU, SU or PLAIN", false);

  auto* mint = direct("mint", "Mint NFSTs for a band (SMA only)");
  opt(mint, "--owner", "owner", "Owner (primary user) address");
  opt(mint, "--start", "startFreqMhz", "Start frequency in MHz");
  opt(mint, "--end", "endFreqMhz", "End frequency in MHz");
  opt(mint, "--location", "geoLocation", "Geographic location label");

  auto* advance = direct("advance-time", "Advance the simulated clock (SMA only)");
  opt(advance, "seconds", "seconds", "Seconds to advance");

  auto* set_user = direct("set-user", "Grant a lease directly (owner only)");
  opt(set_user, "token", "tokenId", "Token id");
  opt(set_user, "--user", "user", "Lessee address");
  opt(set_user, "--lease", "leaseDurationSec", "Lease duration in seconds");

  auto* start = direct("start", "Open an auction for a token's lease (owner only)");
  opt(start, "token", "tokenId", "Token id");
  opt(start, "--duration", "auctionDurationSec", "Auction duration in seconds");
  opt(start, "--lease", "leaseDurationSec", "Lease duration in seconds");
  opt(start, "--beneficiary", "beneficiary", "Beneficiary address (default: the caller)", false);
  opt(start, "--start-price", "startingPriceEther", "Starting price in ether (default 0)", false);

  auto* bid = direct("bid", "Bid on an open auction");
  opt(bid, "token", "tokenId", "Token id");
  opt(bid, "--amount", "amountEther", "Bid in ether");

  auto* end = direct("end", "End an auction after its end time (owner only)");
  opt(end, "token", "tokenId", "Token id");
  auto* withdraw = direct("withdraw", "Withdraw pending returns");
  opt(withdraw, "token", "tokenId", "Token id");

  direct("idle", "List tokens with an open auction");
  auto* info = direct("info", "Show a token");
  opt(info, "token", "tokenId", "Token id");
  auto* auction = direct("auction", "Show a token's auction");
  opt(auction, "token", "tokenId", "Token id");
  auto* account = direct("account", "Show an account's balance and pending returns");
  opt(account, "address", "address", "Account address");
  direct("accounts", "List known accounts");
  auto* events = direct("events", "List journal events");
  opt(events, "--since", "since", "Only events with seq greater than this", false);
  direct("state-hash", "Show the state hash");
  direct("health", "Show service health");

  std::string scenario_file;
  bool in_process = false;
  auto* run = app.add_subcommand("run", "Run a JSON scenario file");
  run->add_option("scenario", scenario_file, "Scenario file")->required();
  run->add_flag("--in-process", in_process, "Run against a fresh in-memory ledger instead of a server");
  run->callback([&] { action = [&] { return run_scenario_command(g, scenario_file, in_process); }; });

  std::string journal_path;
  auto* verify = app.add_subcommand("verify-journal", "Replay a journal offline and print its final hash");
  verify->add_option("journal", journal_path, "Journal file (JSON Lines)")->required();
  verify->callback([&] { action = [&] { return verify_journal_command(g, journal_path); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitTransport;
  }

  if (op == "start" && s["beneficiary"].empty() && g.caller) s["beneficiary"] = *g.caller;
  if (op == "start" && s["startingPriceEther"].empty()) s["startingPriceEther"] = "0";
  param_strings({"to", "amountEther", "role", "owner", "startFreqMhz", "endFreqMhz", "geoLocation", "seconds",
                 "tokenId", "user", "leaseDurationSec", "auctionDurationSec", "beneficiary", "startingPriceEther",
                 "address", "since"});
  try {
    return action();
  } catch (const LedgerError& e) {
    std::cerr << "error: " << error_name(e.code()) << ": " << e.what() << "\n";
    return kExitTransport;
  }
}

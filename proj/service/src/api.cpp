#include "spectrum/service/api.hpp"

#include <charconv>
#include <functional>
#include <vector>

#include <spdlog/spdlog.h>

#include "spectrum/auction.hpp"
#include "spectrum/canonical.hpp"
#include "spectrum/nfst.hpp"

namespace spectrum::service {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

// Service-level failures that have no ledger error code.
struct RequestError {
  int status;
  std::string code;
  std::string message;
};

[[noreturn]] void bad_request(const std::string& message) {
  throw RequestError{400, std::string(error_name(ErrorCode::InvalidArgument)), message};
}

std::vector<std::string_view> split_path(std::string_view path) {
  std::vector<std::string_view> parts;
  std::size_t pos = 0;
  while (pos < path.size()) {
    if (path[pos] == '/') {
      ++pos;
      continue;
    }
    auto next = path.find('/', pos);
    if (next == std::string_view::npos) next = path.size();
    parts.push_back(path.substr(pos, next - pos));
    pos = next;
  }
  return parts;
}

std::optional<std::uint64_t> parse_u64(std::string_view text) {
  std::uint64_t value = 0;
  if (text.empty()) return std::nullopt;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
  return value;
}

TokenId parse_token_id(std::string_view text) {
  auto value = parse_u64(text);
  if (!value || *value == 0) bad_request("token id must be a positive integer, got '" + std::string(text) + "'");
  return TokenId{*value};
}

// ---- request body fields ----

const json& field(const json& body, const char* key) {
  auto it = body.find(key);
  if (it == body.end() || it->is_null()) bad_request(std::string("missing field '") + key + "'");
  return *it;
}

Address address_field(const json& body, const char* key) {
  const json& v = field(body, key);
  std::optional<Address> address;
  if (v.is_string()) address = Address::parse(v.get<std::string>());
  if (!address) bad_request(std::string("field '") + key + "' must be a 0x-prefixed 20-byte hex address");
  return *address;
}

std::uint64_t u64_field(const json& body, const char* key) {
  const json& v = field(body, key);
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_string()) {
    if (auto parsed = parse_u64(v.get<std::string>())) return *parsed;
  }
  bad_request(std::string("field '") + key + "' must be a non-negative integer");
}

Wei ether_value(const json& v, const char* key) {
  if (v.is_number_unsigned()) return Wei::ether(v.get<std::uint64_t>());
  if (!v.is_string()) {
    bad_request(std::string("field '") + key + "' must be a decimal ether string such as \"3.5\"");
  }
  try {
    return Wei::from_ether(v.get<std::string>());
  } catch (const LedgerError& e) {
    bad_request(std::string("field '") + key + "': " + e.what());
  }
}

Wei ether_field(const json& body, const char* key) { return ether_value(field(body, key), key); }

FrequencyMhz frequency_field(const json& body, const char* key) {
  const json& v = field(body, key);
  if (v.is_number_unsigned()) return FrequencyMhz{v.get<std::uint64_t>()};
  if (v.is_string()) {
    try {
      return parse_frequency(v.get<std::string>());
    } catch (const LedgerError&) {
    }
  }
  bad_request(std::string("field '") + key + "' must be an integer MHz value or a string like \"3350MHz\"");
}

std::string string_field(const json& body, const char* key) {
  const json& v = field(body, key);
  if (!v.is_string()) bad_request(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

// ---- response rendering ----

std::string optional_address(const std::optional<Address>& a) { return a ? a->to_string() : std::string(); }

void put_wei(ordered_json& out, const std::string& key, Wei amount) {
  out[key] = amount.to_ether_string();
  out[key + "Wei"] = amount.to_string();
}

ordered_json band_json(ordered_json out, const SpectrumBand& band) {
  out["startFreq"] = band.start.to_string();
  out["endFreq"] = band.end.to_string();
  out["location"] = band.location;
  return out;
}

ordered_json token_json(const TokenInfo& info) {
  ordered_json out;
  out["tokenId"] = info.id.value;
  out = band_json(std::move(out), info.band);
  out["owner"] = info.owner.to_string();
  out["issuer"] = info.issuer.to_string();
  out["user"] = optional_address(info.user);
  out["userExpires"] = info.user_expires.value_or(0);
  out["status"] = std::string(to_string(info.status));
  return out;
}

ordered_json auction_json(const AuctionView& view, Timestamp now) {
  ordered_json out;
  out["tokenId"] = view.token.value;
  out["beneficiary"] = view.beneficiary.to_string();
  put_wei(out, "startingPrice", view.starting_price);
  out["endTime"] = view.end_time;
  out["leaseDurationSec"] = view.lease_duration;
  out["highestBidder"] = optional_address(view.highest_bidder);
  put_wei(out, "highestBid", view.highest_bid);
  out["ended"] = view.ended;
  out["biddingOpen"] = !view.ended && now <= view.end_time;
  out["now"] = now;
  return out;
}

ordered_json idle_json(const IdleEntry& entry) {
  ordered_json out;
  out["tokenId"] = entry.id.value;
  out = band_json(std::move(out), entry.band);
  out["owner"] = entry.owner.to_string();
  out["beneficiary"] = entry.beneficiary.to_string();
  out["endTime"] = entry.end_time;
  out["highestBidder"] = optional_address(entry.highest_bidder);
  put_wei(out, "highestBid", entry.highest_bid);
  return out;
}

ordered_json settlement_json(TokenId id, const Settlement& s) {
  ordered_json out;
  out["tokenId"] = id.value;
  out["winner"] = optional_address(s.winner);
  put_wei(out, "paid", s.paid);
  out["expires"] = s.expires.value_or(0);
  ordered_json refunds = ordered_json::array();
  for (const auto& [bidder, amount] : s.refunds) {
    ordered_json r;
    r["bidder"] = bidder.to_string();
    put_wei(r, "amount", amount);
    refunds.push_back(std::move(r));
  }
  out["refunds"] = std::move(refunds);
  return out;
}

ordered_json account_json(const Address& address, const LedgerState& state) {
  ordered_json out;
  out["address"] = address.to_string();
  auto it = state.accounts.find(address);
  out["role"] = std::string(to_string(it == state.accounts.end() ? Role::Plain : it->second.role));
  put_wei(out, "balance", state.balance_of(address));
  return out;
}

ordered_json event_json(const EventRecord& record) {
  ordered_json out;
  out["seq"] = record.seq;
  out["timestamp"] = record.timestamp;
  out["event"] = record.event;
  ordered_json args = ordered_json::object();
  for (const auto& [key, value] : record.args) args[key] = value;
  out["args"] = std::move(args);
  return out;
}

// ---- routing ----

class Router {
 public:
  explicit Router(const ApiRequest& request) : request_(request), parts_(split_path(request.path)) {}

  bool match(std::string_view method, std::initializer_list<std::string_view> pattern) {
    if (request_.method != method || parts_.size() != pattern.size()) return false;
    std::size_t i = 0;
    for (auto p : pattern) {
      if (p != "{}" && p != parts_[i]) return false;
      ++i;
    }
    return true;
  }
  bool is_command() const {
    static const std::vector<std::vector<std::string_view>> shapes = {
        {"admin", "mint"},         {"admin", "faucet"},          {"admin", "advance-time"},
        {"nfst", "{}", "set-user"}, {"auction", "{}", "start"},   {"auction", "{}", "bid"},
        {"auction", "{}", "end"},  {"auction", "{}", "withdraw"}};
    if (request_.method != "POST") return false;
    for (const auto& shape : shapes) {
      if (shape.size() != parts_.size()) continue;
      bool ok = true;
      for (std::size_t i = 0; i < shape.size() && ok; ++i) ok = shape[i] == "{}" || shape[i] == parts_[i];
      if (ok) return true;
    }
    return false;
  }
  std::string_view part(std::size_t i) const { return parts_.at(i); }

 private:
  const ApiRequest& request_;
  std::vector<std::string_view> parts_;
};

json parse_body(const std::string& text) {
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) return json::object();
  json body = json::parse(text, nullptr, false);
  if (body.is_discarded()) bad_request("request body is not valid JSON");
  if (body.is_null()) return json::object();
  if (!body.is_object()) bad_request("request body must be a JSON object");
  return body;
}

Address require_caller(const ApiRequest& request) {
  std::optional<Address> caller;
  if (request.caller) caller = Address::parse(*request.caller);
  if (!caller) {
    throw RequestError{401, std::string(error_name(ErrorCode::NotAuthorized)),
                       request.caller ? "malformed X-Caller-Address header"
                                      : "missing X-Caller-Address header"};
  }
  return *caller;
}

ordered_json envelope_ok(std::uint64_t seq, ordered_json data) {
  ordered_json out;
  out["ok"] = true;
  out["seq"] = seq;
  out["data"] = std::move(data);
  return out;
}

ordered_json envelope_error(std::uint64_t seq, const std::string& code, const std::string& message) {
  ordered_json out;
  out["ok"] = false;
  out["seq"] = seq;
  ordered_json error;
  error["code"] = code;
  error["message"] = message;
  out["error"] = std::move(error);
  return out;
}

}  // namespace

int http_status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument:
      return 400;
    case ErrorCode::UnknownToken:
      return 404;
    case ErrorCode::PersistenceFailure:
    case ErrorCode::CorruptJournal:
    case ErrorCode::GenesisMismatch:
      return 500;
    default:
      return 409;
  }
}

ApiService::ApiService(ServiceConfig config, Ledger::WallClock wall_clock)
    : config_(std::move(config)), snapshot_policy_(config_.snapshot_every) {
  for (const auto& path : {config_.journal_path, config_.snapshot_path}) {
    std::error_code ec;
    if (!path.empty() && path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  }
  Recovered recovered = recover(config_.genesis, config_.journal_path, config_.snapshot_path);
  recovered_snapshot_seq_ = recovered.snapshot_seq;
  recovered_dropped_bytes_ = recovered.dropped_bytes;
  snapshot_policy_ = SnapshotPolicy(config_.snapshot_every, recovered.state.last_seq);
  if (!config_.journal_path.empty()) journal_ = std::make_unique<FileJournal>(config_.journal_path);
  ledger_ = std::make_unique<Ledger>(std::move(recovered.state), std::move(recovered.history), journal_.get(),
                                     std::move(wall_clock));
}

void ApiService::after_commit() {
  if (config_.snapshot_path.empty()) return;
  std::lock_guard lock(snapshot_mutex_);
  auto state = ledger_->snapshot();
  if (!snapshot_policy_.due(state->last_seq)) return;
  snapshot_policy_.attempted(state->last_seq);
  try {
    write_snapshot(config_.snapshot_path, *state);
    spdlog::info("snapshot written at seq {}", state->last_seq);
  } catch (const LedgerError& e) {
    spdlog::warn("snapshot at seq {} failed: {}; next attempt at seq {}", state->last_seq, e.what(),
                 snapshot_policy_.next_due());
  }
}

ApiResponse ApiService::handle(const ApiRequest& request) {
  Ledger& ledger = *ledger_;
  Router r(request);
  try {
    // Reads: one immutable snapshot per request.
    if (request.method == "GET") {
      auto state = ledger.snapshot();
      const std::uint64_t seq = state->last_seq;
      auto ok = [&](ordered_json data) { return ApiResponse{200, envelope_ok(seq, std::move(data))}; };

      if (r.match("GET", {"spectrum", "idle"})) {
        ordered_json list = ordered_json::array();
        for (const auto& entry : registry::list_idle(*state)) list.push_back(idle_json(entry));
        return ok(ordered_json{{"idle", std::move(list)}});
      }
      if (r.match("GET", {"nfst", "{}"})) return ok(token_json(registry::token_info(*state, parse_token_id(r.part(1)))));
      if (r.match("GET", {"auction", "{}"})) {
        TokenId id = parse_token_id(r.part(1));
        registry::token(*state, id);
        auto out = auction_json(auction::auction_info(*state, id), state->clock);
        const Auction* a = auction::find(*state, id);
        ordered_json pending = ordered_json::array();
        for (const auto& [bidder, amount] : a->pending_returns) {
          ordered_json p;
          p["bidder"] = bidder.to_string();
          put_wei(p, "amount", amount);
          pending.push_back(std::move(p));
        }
        out["pendingReturns"] = std::move(pending);
        return ok(std::move(out));
      }
      if (r.match("GET", {"accounts"})) {
        ordered_json list = ordered_json::array();
        for (const auto& [address, _] : state->accounts) list.push_back(account_json(address, *state));
        return ok(ordered_json{{"accounts", std::move(list)}});
      }
      if (r.match("GET", {"accounts", "{}"})) {
        auto address = Address::parse(r.part(1));
        if (!address) bad_request("malformed address '" + std::string(r.part(1)) + "'");
        auto out = account_json(*address, *state);
        ordered_json pending = ordered_json::array();
        for (const auto& [id, a] : state->auctions) {
          Wei amount = a.pending_for(*address);
          if (amount.is_zero()) continue;
          ordered_json p;
          p["tokenId"] = id.value;
          put_wei(p, "amount", amount);
          pending.push_back(std::move(p));
        }
        out["pendingReturns"] = std::move(pending);
        return ok(std::move(out));
      }
      if (r.match("GET", {"events"})) {
        std::uint64_t since = 0;
        if (auto it = request.query.find("since"); it != request.query.end()) {
          auto parsed = parse_u64(it->second);
          if (!parsed) bad_request("query parameter 'since' must be a non-negative integer");
          since = *parsed;
        }
        ordered_json list = ordered_json::array();
        for (const auto& record : ledger.events_since(since)) {
          if (record.seq > seq) break;
          list.push_back(event_json(record));
        }
        return ok(ordered_json{{"events", std::move(list)}});
      }
      if (r.match("GET", {"healthz"})) {
        ordered_json out;
        out["status"] = "ok";
        out["now"] = state->clock;
        out["seq"] = seq;
        out["clockMode"] = std::string(to_string(state->genesis.clock_mode));
        out["genesisTime"] = state->genesis.genesis_time;
        out["sma"] = state->genesis.sma.to_string();
        out["minAllocMhz"] = state->genesis.min_alloc_mhz;
        return ok(std::move(out));
      }
      if (r.match("GET", {"state-hash"})) return ok(ordered_json{{"stateHash", state_hash(*state)}});
    }

    std::optional<ordered_json> data;
    auto command = [&](std::initializer_list<std::string_view> pattern) {
      return !data && r.match("POST", pattern);
    };
    if (r.is_command()) {
      Address caller = require_caller(request);
      json body = parse_body(request.body);

      if (command({"admin", "mint"})) {
        auto ids = ledger.mint_nfst(caller, address_field(body, "owner"), frequency_field(body, "startFreqMhz"),
                                    frequency_field(body, "endFreqMhz"), string_field(body, "geoLocation"));
        ordered_json list = ordered_json::array();
        for (auto id : ids) list.push_back(id.value);
        data = ordered_json{{"tokenIds", std::move(list)}};
      }
      if (command({"admin", "faucet"})) {
        Role role = Role::Plain;
        if (auto it = body.find("role"); it != body.end() && !it->is_null()) {
          std::optional<Role> parsed;
          if (it->is_string()) parsed = role_from_string(it->get<std::string>());
          if (!parsed) bad_request("field 'role' must be one of PU, SU, PLAIN");
          role = *parsed;
        }
        Address to = address_field(body, "to");
        Wei amount = ether_field(body, "amountEther");
        Wei balance = ledger.faucet(caller, to, amount, role);
        ordered_json out;
        out["to"] = to.to_string();
        put_wei(out, "amount", amount);
        put_wei(out, "balance", balance);
        data = std::move(out);
      }
      if (command({"admin", "advance-time"})) {
        data = ordered_json{{"now", ledger.advance_time(caller, u64_field(body, "seconds"))}};
      }
      if (command({"nfst", "{}", "set-user"})) {
        TokenId id = parse_token_id(r.part(1));
        auto grant = ledger.set_user(caller, id, address_field(body, "user"), u64_field(body, "leaseDurationSec"));
        data = ordered_json{{"tokenId", id.value}, {"user", grant.user.to_string()}, {"expires", grant.expires}};
      }
      if (command({"auction", "{}", "start"})) {
        TokenId id = parse_token_id(r.part(1));
        auto view = ledger.start_auction(caller, id, u64_field(body, "auctionDurationSec"),
                                         u64_field(body, "leaseDurationSec"), address_field(body, "beneficiary"),
                                         ether_field(body, "startingPriceEther"));
        data = auction_json(view, ledger.now());
      }
      if (command({"auction", "{}", "bid"})) {
        TokenId id = parse_token_id(r.part(1));
        auto it = body.find("amountEther");
        if (it == body.end()) it = body.find("amount");
        if (it == body.end() || it->is_null()) bad_request("missing field 'amountEther'");
        auto view = ledger.bid(caller, id, ether_value(*it, "amountEther"));
        data = auction_json(view, ledger.now());
      }
      if (command({"auction", "{}", "end"})) {
        TokenId id = parse_token_id(r.part(1));
        data = settlement_json(id, ledger.end_auction(caller, id));
      }
      if (command({"auction", "{}", "withdraw"})) {
        TokenId id = parse_token_id(r.part(1));
        Wei amount = ledger.withdraw(caller, id);
        ordered_json out;
        out["tokenId"] = id.value;
        out["bidder"] = caller.to_string();
        put_wei(out, "amount", amount);
        data = std::move(out);
      }
      if (data) {
        std::uint64_t seq = ledger.last_seq();
        after_commit();
        return {200, envelope_ok(seq, std::move(*data))};
      }
    }
    throw RequestError{404, "NotFound", "no route for " + request.method + " " + request.path};
  } catch (const RequestError& e) {
    return {e.status, envelope_error(ledger.last_seq(), e.code, e.message)};
  } catch (const LedgerError& e) {
    return {http_status_for(e.code()),
            envelope_error(ledger.last_seq(), std::string(error_name(e.code())), e.what())};
  } catch (const std::exception& e) {
    spdlog::error("{} {}: {}", request.method, request.path, e.what());
    return {500, envelope_error(ledger.last_seq(), "Internal", e.what())};
  }
}

}  // namespace spectrum::service

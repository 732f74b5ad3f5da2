#include "spectrum/canonical.hpp"

#include <openssl/evp.h>

#include "spectrum/error.hpp"

namespace spectrum {

using nlohmann::json;

namespace {

json optional_address(const std::optional<Address>& a) { return a ? json(a->to_string()) : json(nullptr); }

json auction_to_json(const Auction& a) {
  json pending = json::object();
  for (const auto& [bidder, amount] : a.pending_returns) pending[bidder.to_string()] = amount.to_string();
  json bidders = json::array();
  for (const auto& b : a.bidders) bidders.push_back(b.to_string());
  return {
      {"token", a.token.value},
      {"beneficiary", a.beneficiary.to_string()},
      {"starting_price", a.starting_price.to_string()},
      {"end_time", a.end_time},
      {"lease_duration", a.lease_duration},
      {"highest_bidder", optional_address(a.highest_bidder)},
      {"highest_bid", a.highest_bid.to_string()},
      {"pending_returns", std::move(pending)},
      {"bidders", std::move(bidders)},
      {"ended", a.ended},
      {"debited", a.debited.to_string()},
      {"refunded", a.refunded.to_string()},
      {"settled", a.settled.to_string()},
  };
}

Address address_at(const json& j, const char* key) { return Address::from_string(j.at(key).get<std::string>()); }
Wei wei_at(const json& j, const char* key) { return Wei::parse(j.at(key).get<std::string>()); }

std::optional<Address> optional_address_at(const json& j, const char* key) {
  const auto& v = j.at(key);
  if (v.is_null()) return std::nullopt;
  return Address::from_string(v.get<std::string>());
}

Auction auction_from_json(const json& j) {
  Auction a;
  a.token = TokenId{j.at("token").get<std::uint64_t>()};
  a.beneficiary = address_at(j, "beneficiary");
  a.starting_price = wei_at(j, "starting_price");
  a.end_time = j.at("end_time").get<Timestamp>();
  a.lease_duration = j.at("lease_duration").get<Seconds>();
  a.highest_bidder = optional_address_at(j, "highest_bidder");
  a.highest_bid = wei_at(j, "highest_bid");
  for (const auto& [bidder, amount] : j.at("pending_returns").items()) {
    a.pending_returns.emplace(Address::from_string(bidder), Wei::parse(amount.get<std::string>()));
  }
  for (const auto& b : j.at("bidders")) a.bidders.push_back(Address::from_string(b.get<std::string>()));
  a.ended = j.at("ended").get<bool>();
  a.debited = wei_at(j, "debited");
  a.refunded = wei_at(j, "refunded");
  a.settled = wei_at(j, "settled");
  return a;
}

}  // namespace

json to_canonical_json(const LedgerState& state) {
  json accounts = json::object();
  for (const auto& [address, account] : state.accounts) {
    accounts[address.to_string()] = {{"balance", account.balance.to_string()},
                                     {"role", std::string(to_string(account.role))}};
  }
  json tokens = json::object();
  for (const auto& [id, nfst] : state.tokens) {
    json grant = nullptr;
    if (nfst.grant) grant = {{"user", nfst.grant->user.to_string()}, {"expires", nfst.grant->expires}};
    tokens[id.to_string()] = {
        {"band",
         {{"start_mhz", nfst.band.start.value}, {"end_mhz", nfst.band.end.value}, {"location", nfst.band.location}}},
        {"owner", nfst.owner.to_string()},
        {"grant", std::move(grant)},
        {"issuer", nfst.issuer.to_string()},
    };
  }
  json auctions = json::object();
  for (const auto& [id, a] : state.auctions) auctions[id.to_string()] = auction_to_json(a);
  json history = json::object();
  for (const auto& [id, list] : state.auction_history) {
    json entries = json::array();
    for (const auto& a : list) entries.push_back(auction_to_json(a));
    history[id.to_string()] = std::move(entries);
  }
  return {
      {"genesis", genesis_to_json(state.genesis)},
      {"clock", state.clock},
      {"last_seq", state.last_seq},
      {"total_issuance", state.total_issuance.to_string()},
      {"next_token_id", state.next_token_id},
      {"accounts", std::move(accounts)},
      {"tokens", std::move(tokens)},
      {"auctions", std::move(auctions)},
      {"auction_history", std::move(history)},
  };
}

LedgerState from_canonical_json(const json& doc) {
  try {
    LedgerState state;
    state.genesis = genesis_from_json(doc.at("genesis"));
    state.clock = doc.at("clock").get<Timestamp>();
    state.last_seq = doc.at("last_seq").get<std::uint64_t>();
    state.total_issuance = wei_at(doc, "total_issuance");
    state.next_token_id = doc.at("next_token_id").get<std::uint64_t>();
    for (const auto& [key, value] : doc.at("accounts").items()) {
      Address address = Address::from_string(key);
      auto role = role_from_string(value.at("role").get<std::string>());
      if (!role) fail(ErrorCode::CorruptJournal, "unknown role label");
      state.accounts.emplace(address, Account{address, wei_at(value, "balance"), *role});
    }
    for (const auto& [key, value] : doc.at("tokens").items()) {
      Nfst nfst;
      nfst.id = TokenId{std::stoull(key)};
      const auto& band = value.at("band");
      nfst.band = SpectrumBand{FrequencyMhz{band.at("start_mhz").get<std::uint64_t>()},
                               FrequencyMhz{band.at("end_mhz").get<std::uint64_t>()},
                               band.at("location").get<std::string>()};
      nfst.owner = address_at(value, "owner");
      nfst.issuer = address_at(value, "issuer");
      if (const auto& g = value.at("grant"); !g.is_null()) {
        nfst.grant = UserGrant{address_at(g, "user"), g.at("expires").get<Timestamp>()};
      }
      state.tokens.emplace(nfst.id, std::move(nfst));
    }
    for (const auto& [key, value] : doc.at("auctions").items()) {
      state.auctions.emplace(TokenId{std::stoull(key)}, auction_from_json(value));
    }
    for (const auto& [key, value] : doc.at("auction_history").items()) {
      auto& list = state.auction_history[TokenId{std::stoull(key)}];
      for (const auto& a : value) list.push_back(auction_from_json(a));
    }
    return state;
  } catch (const LedgerError& e) {
    if (e.code() == ErrorCode::CorruptJournal) throw;
    fail(ErrorCode::CorruptJournal, std::string("malformed state document: ") + e.what());
  } catch (const std::exception& e) {
    fail(ErrorCode::CorruptJournal, std::string("malformed state document: ") + e.what());
  }
}

std::string canonical_serialization(const LedgerState& state) { return to_canonical_json(state).dump(); }

std::string state_hash(const LedgerState& state) { return sha256_hex(canonical_serialization(state)); }

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * length);
  for (unsigned int i = 0; i < length; ++i) {
    out.push_back(kDigits[digest[i] >> 4]);
    out.push_back(kDigits[digest[i] & 0xf]);
  }
  return out;
}

}  // namespace spectrum

#include "spectrum/nfst.hpp"

#include "event_args.hpp"
#include "spectrum/auction.hpp"
#include "spectrum/command_context.hpp"
#include "spectrum/error.hpp"
#include "spectrum/ledger_state.hpp"

namespace spectrum {

std::string_view to_string(SpectrumStatus status) { return status == SpectrumStatus::Idle ? "Idle" : "Occupied"; }

namespace registry {

namespace {

// Upper bound on tokens produced by a single mint call.
constexpr std::uint64_t kMaxTokensPerMint = 100'000;

}  // namespace

std::vector<TokenId> mint_nfst(CommandContext& ctx, const Address& caller, const Address& owner,
                               FrequencyMhz start, FrequencyMhz end, const std::string& location) {
  const auto& state = ctx.state();
  if (caller != state.genesis.sma) fail(ErrorCode::NotAuthorized, "only the SMA may mint NFSTs");
  if (owner.is_zero()) fail(ErrorCode::InvalidArgument, "owner must not be the zero address");
  if (location.empty()) fail(ErrorCode::InvalidArgument, "geoLocation must not be empty");
  if (start >= end) {
    fail(ErrorCode::InvalidBand, "startFreq " + start.to_string() + " is not below endFreq " + end.to_string());
  }
  const std::uint64_t min_alloc = state.genesis.min_alloc_mhz;
  const std::uint64_t width = end.value - start.value;
  if (width % min_alloc != 0) {
    fail(ErrorCode::MisalignedBand,
         "band width " + std::to_string(width) + "MHz is not a multiple of " + std::to_string(min_alloc) + "MHz");
  }
  if (width / min_alloc > kMaxTokensPerMint) {
    fail(ErrorCode::InvalidArgument, "band would mint more than " + std::to_string(kMaxTokensPerMint) + " tokens");
  }

  std::vector<TokenId> minted;
  for (std::uint64_t freq = start.value; freq < end.value; freq += min_alloc) {
    TokenId id{ctx.state().next_token_id};
    ctx.emit(events::kTransfer,
             {{"from", Address{}.to_string()}, {"to", owner.to_string()}, {"tokenId", id.to_string()}});
    ctx.emit(events::kNfstMint, {{"startFreq", FrequencyMhz{freq}.to_string()},
                                 {"endFreq", FrequencyMhz{freq + min_alloc}.to_string()},
                                 {"location", location},
                                 {"leaseDuration", "0"},
                                 {"NFSTID", id.to_string()},
                                 {"status", std::string(to_string(SpectrumStatus::Occupied))}});
    minted.push_back(id);
  }
  return minted;
}

UserGrant set_user(CommandContext& ctx, const Address& caller, TokenId id, const Address& user,
                   Seconds lease_duration) {
  const auto& nfst = token(ctx.state(), id);
  if (caller != nfst.owner) fail(ErrorCode::NotAuthorized, "only the token owner may set its user");
  if (user.is_zero()) fail(ErrorCode::InvalidArgument, "user must not be the zero address");
  if (lease_duration == 0) fail(ErrorCode::ZeroDuration, "lease duration must be positive");
  if (effective_grant(nfst, ctx.now())) fail(ErrorCode::AlreadyLeased, "token " + id.to_string() + " is leased");
  if (auction::find_open(ctx.state(), id)) {
    fail(ErrorCode::AuctionAlreadyOpen, "token " + id.to_string() + " is under auction");
  }

  UserGrant grant{user, add_seconds(ctx.now(), lease_duration)};
  ctx.emit(events::kUpdateUser,
           {{"tokenId", id.to_string()}, {"user", user.to_string()}, {"expires", std::to_string(grant.expires)}});
  ctx.emit(events::kUpdateSpectrumStatus,
           {{"tokenId", id.to_string()}, {"status", std::string(to_string(SpectrumStatus::Occupied))}});
  return grant;
}

const Nfst& token(const LedgerState& state, TokenId id) {
  auto it = state.tokens.find(id);
  if (it == state.tokens.end()) fail(ErrorCode::UnknownToken, "no token " + id.to_string());
  return it->second;
}

Address owner_of(const LedgerState& state, TokenId id) { return token(state, id).owner; }

std::optional<UserGrant> effective_grant(const Nfst& nfst, Timestamp now) {
  if (nfst.grant && now <= nfst.grant->expires) return nfst.grant;
  return std::nullopt;
}

std::optional<Address> user_of(const LedgerState& state, TokenId id) {
  auto grant = effective_grant(token(state, id), state.clock);
  if (!grant) return std::nullopt;
  return grant->user;
}

std::optional<Timestamp> user_expires(const LedgerState& state, TokenId id) {
  const auto& nfst = token(state, id);
  if (!nfst.grant) return std::nullopt;
  return nfst.grant->expires;
}

SpectrumStatus status_of(const LedgerState& state, TokenId id) {
  (void)token(state, id);
  return auction::find_open(state, id) ? SpectrumStatus::Idle : SpectrumStatus::Occupied;
}

std::vector<IdleEntry> list_idle(const LedgerState& state) {
  std::vector<IdleEntry> out;
  for (const auto& [id, a] : state.auctions) {
    if (a.ended) continue;
    const auto& nfst = token(state, id);
    out.push_back(IdleEntry{id, nfst.band, nfst.owner, a.beneficiary, a.end_time, a.highest_bid, a.highest_bidder});
  }
  return out;
}

TokenInfo token_info(const LedgerState& state, TokenId id) {
  const auto& nfst = token(state, id);
  return TokenInfo{id,
                   nfst.band,
                   nfst.owner,
                   nfst.issuer,
                   user_of(state, id),
                   user_expires(state, id),
                   status_of(state, id)};
}

}  // namespace registry

namespace detail {

void apply_transfer(LedgerState& state, const EventRecord& record) {
  Address from = arg_address(record, "from");
  Address to = arg_address(record, "to");
  TokenId id = arg_token(record);
  if (!from.is_zero()) corrupt(record, "ownership transfers are not supported");
  if (to.is_zero()) corrupt(record, "mint to the zero address");
  if (id.value != state.next_token_id || state.tokens.contains(id)) corrupt(record, "token id out of sequence");

  state.tokens.emplace(id, Nfst{id, SpectrumBand{}, to, std::nullopt, Address{}});
  auto [it, inserted] = state.accounts.try_emplace(to, Account{to, Wei{}, Role::Pu});
  if (!inserted && it->second.role == Role::Plain) it->second.role = Role::Pu;
}

void apply_nfst_mint(LedgerState& state, const EventRecord& record) {
  TokenId id = arg_token(record, "NFSTID");
  auto it = state.tokens.find(id);
  if (id.value != state.next_token_id || it == state.tokens.end() || !it->second.issuer.is_zero()) {
    corrupt(record, "NFSTMint without a preceding Transfer for the same id");
  }
  FrequencyMhz start = arg_frequency(record, "startFreq");
  FrequencyMhz end = arg_frequency(record, "endFreq");
  const std::string& location = record.at("location");
  if (start >= end) corrupt(record, "empty band");
  if (location.empty()) corrupt(record, "empty location");
  if (record.at("leaseDuration") != "0" || record.at("status") != to_string(SpectrumStatus::Occupied)) {
    corrupt(record, "unexpected mint-time lease or status");
  }
  if (end.value - start.value != state.genesis.min_alloc_mhz) {
    fail(ErrorCode::GenesisMismatch, "minted band width differs from genesis min_alloc_mhz");
  }

  it->second.band = SpectrumBand{start, end, location};
  it->second.issuer = state.genesis.sma;
  ++state.next_token_id;
}

void apply_update_user(LedgerState& state, const EventRecord& record) {
  TokenId id = arg_token(record);
  Address user = arg_address(record, "user");
  Timestamp expires = arg_u64(record, "expires");
  auto it = state.tokens.find(id);
  if (it == state.tokens.end()) corrupt(record, "unknown token");
  if (user.is_zero()) corrupt(record, "zero user");
  if (expires < state.clock) corrupt(record, "grant expires in the past");
  if (registry::effective_grant(it->second, state.clock)) corrupt(record, "overwrites an effective grant");
  if (auction::find_open(state, id)) corrupt(record, "grant while an auction is open");
  it->second.grant = UserGrant{user, expires};
}

void apply_update_status(LedgerState& state, const EventRecord& record) {
  TokenId id = arg_token(record);
  if (!state.tokens.contains(id)) corrupt(record, "unknown token");
  if (record.at("status") != to_string(registry::status_of(state, id))) {
    corrupt(record, "status disagrees with the derived status");
  }
}

}  // namespace detail
}  // namespace spectrum

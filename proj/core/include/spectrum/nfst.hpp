#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spectrum/address.hpp"
#include "spectrum/types.hpp"
#include "spectrum/wei.hpp"

namespace spectrum {

class CommandContext;
struct LedgerState;

struct SpectrumBand {
  FrequencyMhz start;
  FrequencyMhz end;
  std::string location;

  bool operator==(const SpectrumBand&) const = default;
};

/// ERC4907-style user right. Effective while now <= expires; after that it is
/// void without any state change.
struct UserGrant {
  Address user;
  Timestamp expires = 0;

  bool operator==(const UserGrant&) const = default;
};

struct Nfst {
  TokenId id;
  SpectrumBand band;
  Address owner;
  std::optional<UserGrant> grant;
  Address issuer;

  bool operator==(const Nfst&) const = default;
};

enum class SpectrumStatus { Idle, Occupied };

std::string_view to_string(SpectrumStatus status);

struct TokenInfo {
  TokenId id;
  SpectrumBand band;
  Address owner;
  Address issuer;
  std::optional<Address> user;
  std::optional<Timestamp> user_expires;
  SpectrumStatus status = SpectrumStatus::Occupied;
};

struct IdleEntry {
  TokenId id;
  SpectrumBand band;
  Address owner;
  Address beneficiary;
  Timestamp end_time = 0;
  Wei highest_bid;
  std::optional<Address> highest_bidder;
};

namespace registry {

// Commands. Each validates against ctx.state() and emits events; the
// ledger applies them atomically.
std::vector<TokenId> mint_nfst(CommandContext& ctx, const Address& caller, const Address& owner,
                               FrequencyMhz start, FrequencyMhz end, const std::string& location);

UserGrant set_user(CommandContext& ctx, const Address& caller, TokenId id, const Address& user,
                   Seconds lease_duration);

// Read-only views.
const Nfst& token(const LedgerState& state, TokenId id);  // throws UnknownToken
Address owner_of(const LedgerState& state, TokenId id);
std::optional<Address> user_of(const LedgerState& state, TokenId id);
std::optional<Timestamp> user_expires(const LedgerState& state, TokenId id);
SpectrumStatus status_of(const LedgerState& state, TokenId id);
std::vector<IdleEntry> list_idle(const LedgerState& state);
TokenInfo token_info(const LedgerState& state, TokenId id);

/// The grant, if any, that is effective at `now`.
std::optional<UserGrant> effective_grant(const Nfst& nfst, Timestamp now);

}  // namespace registry
}  // namespace spectrum

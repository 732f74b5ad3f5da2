#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string_view>
#include <vector>

#include "spectrum/address.hpp"
#include "spectrum/auction.hpp"
#include "spectrum/genesis.hpp"
#include "spectrum/nfst.hpp"
#include "spectrum/types.hpp"
#include "spectrum/wei.hpp"

namespace spectrum {

enum class Role { Sma, Pu, Su, Plain };

std::string_view to_string(Role role);
std::optional<Role> role_from_string(std::string_view text);

struct Account {
  Address address;
  Wei balance;
  Role role = Role::Plain;

  bool operator==(const Account&) const = default;
};

/// Everything the ledger knows except the event list. A pure function of
/// (genesis, ordered events): replaying the journal from genesis_state()
/// rebuilds it exactly.
struct LedgerState {
  GenesisConfig genesis;
  Timestamp clock = 0;
  std::uint64_t last_seq = 0;
  Wei total_issuance;
  std::uint64_t next_token_id = 1;

  std::map<Address, Account> accounts;
  std::map<TokenId, Nfst> tokens;
  std::map<TokenId, Auction> auctions;                    // latest per token
  std::map<TokenId, std::vector<Auction>> auction_history;  // superseded, oldest first

  static LedgerState genesis_state(const GenesisConfig& genesis);

  Wei balance_of(const Address& address) const;
  Wei total_balances() const;
  Wei total_escrow() const;

  bool operator==(const LedgerState&) const = default;
};

}  // namespace spectrum

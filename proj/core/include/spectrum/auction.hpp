#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "spectrum/address.hpp"
#include "spectrum/types.hpp"
#include "spectrum/wei.hpp"

namespace spectrum {

class CommandContext;
struct LedgerState;

/// English auction over the lease term of one token.
///
/// Escrow: the live highest bid is held by the auction, and a displaced
/// highest bid moves into pending_returns of its bidder. The three running
/// totals let the escrow identity
///   debited - refunded - settled == held()
/// be checked at any point.
struct Auction {
  TokenId token;
  Address beneficiary;
  Wei starting_price;
  Timestamp end_time = 0;
  Seconds lease_duration = 0;
  std::optional<Address> highest_bidder;
  Wei highest_bid;
  std::map<Address, Wei> pending_returns;  // only positive entries are kept
  std::vector<Address> bidders;            // first-bid order, no duplicates
  bool ended = false;

  Wei debited;
  Wei refunded;
  Wei settled;

  /// Live hold (until settlement) plus all pending returns.
  Wei held() const;
  Wei pending_total() const;
  Wei pending_for(const Address& bidder) const;

  bool operator==(const Auction&) const = default;
};

struct AuctionView {
  TokenId token;
  Address beneficiary;
  Wei starting_price;
  Timestamp end_time = 0;
  Seconds lease_duration = 0;
  Wei highest_bid;
  std::optional<Address> highest_bidder;
  bool ended = false;
};

struct Settlement {
  std::optional<Address> winner;
  Wei paid;
  std::vector<std::pair<Address, Wei>> refunds;  // first-bid order
  std::optional<Timestamp> expires;
};

namespace auction {

AuctionView start_auction(CommandContext& ctx, const Address& caller, TokenId id, Seconds auction_duration,
                          Seconds lease_duration, const Address& beneficiary, Wei starting_price);
AuctionView bid(CommandContext& ctx, const Address& caller, TokenId id, Wei amount);
Settlement end_auction(CommandContext& ctx, const Address& caller, TokenId id);
Wei withdraw(CommandContext& ctx, const Address& caller, TokenId id);

/// Current (latest) auction record for the token, open or ended.
const Auction* find(const LedgerState& state, TokenId id);
/// The unended auction for the token, if one exists.
const Auction* find_open(const LedgerState& state, TokenId id);

AuctionView auction_info(const LedgerState& state, TokenId id);  // throws NoAuction
AuctionView view_of(const Auction& a);

}  // namespace auction
}  // namespace spectrum

#include "spectrum/auction.hpp"

#include <algorithm>

#include "event_args.hpp"
#include "spectrum/command_context.hpp"
#include "spectrum/error.hpp"
#include "spectrum/ledger_state.hpp"
#include "spectrum/nfst.hpp"

namespace spectrum {

Wei Auction::pending_total() const {
  Wei sum;
  for (const auto& [_, amount] : pending_returns) sum += amount;
  return sum;
}

Wei Auction::pending_for(const Address& bidder) const {
  auto it = pending_returns.find(bidder);
  return it == pending_returns.end() ? Wei{} : it->second;
}

Wei Auction::held() const {
  Wei live = (!ended && highest_bidder) ? highest_bid : Wei{};
  return live + pending_total();
}

namespace auction {

const Auction* find(const LedgerState& state, TokenId id) {
  auto it = state.auctions.find(id);
  return it == state.auctions.end() ? nullptr : &it->second;
}

const Auction* find_open(const LedgerState& state, TokenId id) {
  const auto* a = find(state, id);
  return (a != nullptr && !a->ended) ? a : nullptr;
}

AuctionView view_of(const Auction& a) {
  return AuctionView{a.token,        a.beneficiary, a.starting_price, a.end_time,
                     a.lease_duration, a.highest_bid, a.highest_bidder, a.ended};
}

AuctionView auction_info(const LedgerState& state, TokenId id) {
  const auto* a = find(state, id);
  if (a == nullptr) fail(ErrorCode::NoAuction, "no auction for token " + id.to_string());
  return view_of(*a);
}

AuctionView start_auction(CommandContext& ctx, const Address& caller, TokenId id, Seconds auction_duration,
                          Seconds lease_duration, const Address& beneficiary, Wei starting_price) {
  const auto& nfst = registry::token(ctx.state(), id);
  if (caller != nfst.owner) fail(ErrorCode::NotAuthorized, "only the token owner may start an auction");
  if (registry::effective_grant(nfst, ctx.now())) {
    fail(ErrorCode::CurrentlyLeased, "token " + id.to_string() + " is leased until " +
                                         std::to_string(nfst.grant->expires));
  }
  if (find_open(ctx.state(), id)) fail(ErrorCode::AuctionAlreadyOpen, "token " + id.to_string() + " is under auction");
  if (auction_duration == 0 || lease_duration == 0) {
    fail(ErrorCode::ZeroDuration, "auction and lease durations must be positive");
  }
  if (beneficiary.is_zero()) fail(ErrorCode::InvalidArgument, "beneficiary must not be the zero address");

  Timestamp end_time = add_seconds(ctx.now(), auction_duration);
  ctx.emit(events::kAuctionStarted, {{"tokenId", id.to_string()},
                                     {"endTime", std::to_string(end_time)},
                                     {"leaseDuration", std::to_string(lease_duration)},
                                     {"beneficiary", beneficiary.to_string()},
                                     {"startingPrice", starting_price.to_string()}});
  ctx.emit(events::kUpdateSpectrumStatus,
           {{"tokenId", id.to_string()}, {"status", std::string(to_string(SpectrumStatus::Idle))}});
  return view_of(*find(ctx.state(), id));
}

AuctionView bid(CommandContext& ctx, const Address& caller, TokenId id, Wei amount) {
  const auto& nfst = registry::token(ctx.state(), id);
  const auto* a = find_open(ctx.state(), id);
  if (a == nullptr) fail(ErrorCode::NoOpenAuction, "no open auction for token " + id.to_string());
  if (ctx.now() > a->end_time) {
    fail(ErrorCode::AuctionExpired, "auction for token " + id.to_string() + " closed at " +
                                        std::to_string(a->end_time));
  }
  if (caller == a->beneficiary || caller == nfst.owner) {
    fail(ErrorCode::OwnerBid, "the owner and beneficiary may not bid");
  }
  if (a->highest_bidder && caller == *a->highest_bidder) {
    fail(ErrorCode::SelfOutbid, "caller already holds the highest bid");
  }
  if (amount.is_zero()) fail(ErrorCode::BidTooLow, "bid must be positive");
  if (a->highest_bidder ? amount <= a->highest_bid : amount < a->starting_price) {
    fail(ErrorCode::BidTooLow, "bid " + amount.to_ether_string() + " does not beat " +
                                   a->highest_bid.to_ether_string() + " ether");
  }
  if (ctx.state().balance_of(caller) < amount) {
    fail(ErrorCode::InsufficientFunds, "balance " + ctx.state().balance_of(caller).to_ether_string() +
                                           " ether is below the bid");
  }

  ctx.emit(events::kBidPlaced,
           {{"tokenId", id.to_string()}, {"bidder", caller.to_string()}, {"amount", amount.to_string()}});
  return view_of(*find(ctx.state(), id));
}

Settlement end_auction(CommandContext& ctx, const Address& caller, TokenId id) {
  const auto& nfst = registry::token(ctx.state(), id);
  if (caller != nfst.owner) fail(ErrorCode::NotAuthorized, "only the token owner may end the auction");
  const auto* a = find(ctx.state(), id);
  if (a == nullptr) fail(ErrorCode::NoOpenAuction, "no auction for token " + id.to_string());
  if (a->ended) fail(ErrorCode::AlreadyEnded, "auction for token " + id.to_string() + " already ended");
  if (ctx.now() <= a->end_time) {
    fail(ErrorCode::AuctionStillRunning, "auction for token " + id.to_string() + " runs until " +
                                             std::to_string(a->end_time));
  }

  Settlement result;
  result.winner = a->highest_bidder;
  result.paid = a->highest_bidder ? a->highest_bid : Wei{};
  const auto bidders = a->bidders;
  const auto lease = a->lease_duration;

  ctx.emit(events::kAuctionEnded, {{"tokenId", id.to_string()},
                                   {"winner", result.winner ? result.winner->to_string() : ""},
                                   {"amount", result.paid.to_string()}});
  for (const auto& bidder : bidders) {
    Wei owed = find(ctx.state(), id)->pending_for(bidder);
    if (owed.is_zero()) continue;
    ctx.emit(events::kRefund,
             {{"tokenId", id.to_string()}, {"bidder", bidder.to_string()}, {"amount", owed.to_string()}});
    result.refunds.emplace_back(bidder, owed);
  }
  if (result.winner) {
    result.expires = registry::set_user(ctx, caller, id, *result.winner, lease).expires;
  } else {
    ctx.emit(events::kUpdateSpectrumStatus,
             {{"tokenId", id.to_string()}, {"status", std::string(to_string(SpectrumStatus::Occupied))}});
  }
  return result;
}

Wei withdraw(CommandContext& ctx, const Address& caller, TokenId id) {
  (void)registry::token(ctx.state(), id);
  const auto* a = find(ctx.state(), id);
  if (a == nullptr) fail(ErrorCode::NoAuction, "no auction for token " + id.to_string());
  Wei owed = a->pending_for(caller);
  if (owed.is_zero()) fail(ErrorCode::NothingToWithdraw, "nothing pending for " + caller.to_string());
  ctx.emit(events::kWithdrawal,
           {{"tokenId", id.to_string()}, {"bidder", caller.to_string()}, {"amount", owed.to_string()}});
  return owed;
}

}  // namespace auction

namespace detail {

namespace {

Auction& current_auction(LedgerState& state, const EventRecord& record, TokenId id) {
  auto it = state.auctions.find(id);
  if (it == state.auctions.end()) corrupt(record, "no auction for token " + id.to_string());
  return it->second;
}

Account& account(LedgerState& state, const Address& address) {
  return state.accounts.try_emplace(address, Account{address, Wei{}, Role::Plain}).first->second;
}

}  // namespace

void apply_auction_started(LedgerState& state, const EventRecord& record) {
  TokenId id = arg_token(record);
  Timestamp end_time = arg_u64(record, "endTime");
  Seconds lease = arg_u64(record, "leaseDuration");
  Address beneficiary = arg_address(record, "beneficiary");
  Wei starting_price = arg_wei(record, "startingPrice");

  auto token = state.tokens.find(id);
  if (token == state.tokens.end()) corrupt(record, "unknown token");
  if (registry::effective_grant(token->second, state.clock)) corrupt(record, "auction on a leased token");
  if (end_time <= state.clock || lease == 0) corrupt(record, "degenerate auction timing");
  if (beneficiary.is_zero()) corrupt(record, "zero beneficiary");

  auto existing = state.auctions.find(id);
  if (existing != state.auctions.end()) {
    if (!existing->second.ended) corrupt(record, "auction already open");
    state.auction_history[id].push_back(std::move(existing->second));
    state.auctions.erase(existing);
  }
  Auction a;
  a.token = id;
  a.beneficiary = beneficiary;
  a.starting_price = starting_price;
  a.end_time = end_time;
  a.lease_duration = lease;
  a.highest_bid = starting_price;
  state.auctions.emplace(id, std::move(a));
}

void apply_bid_placed(LedgerState& state, const EventRecord& record) {
  TokenId id = arg_token(record);
  Address bidder = arg_address(record, "bidder");
  Wei amount = arg_wei(record, "amount");
  Auction& a = current_auction(state, record, id);

  if (a.ended || state.clock > a.end_time) corrupt(record, "bid on a closed auction");
  if (a.highest_bidder == bidder) corrupt(record, "bidder outbids itself");
  if (bidder == a.beneficiary || bidder == state.tokens.at(id).owner) corrupt(record, "owner bid");
  if (amount.is_zero() || (a.highest_bidder ? amount <= a.highest_bid : amount < a.starting_price)) {
    corrupt(record, "bid does not beat the standing bid");
  }
  Account& payer = account(state, bidder);
  if (payer.balance < amount) corrupt(record, "bidder cannot cover the bid");

  if (a.highest_bidder) a.pending_returns[*a.highest_bidder] += a.highest_bid;
  payer.balance -= amount;
  a.debited += amount;
  a.highest_bidder = bidder;
  a.highest_bid = amount;
  if (std::find(a.bidders.begin(), a.bidders.end(), bidder) == a.bidders.end()) a.bidders.push_back(bidder);
}

void apply_return(LedgerState& state, const EventRecord& record) {
  TokenId id = arg_token(record);
  Address bidder = arg_address(record, "bidder");
  Wei amount = arg_wei(record, "amount");
  Auction& a = current_auction(state, record, id);

  if (record.event == events::kRefund && !a.ended) corrupt(record, "refund before the auction ended");
  auto it = a.pending_returns.find(bidder);
  if (it == a.pending_returns.end() || it->second != amount || amount.is_zero()) {
    corrupt(record, "amount differs from the pending return");
  }
  a.pending_returns.erase(it);
  a.refunded += amount;
  account(state, bidder).balance += amount;
}

void apply_auction_ended(LedgerState& state, const EventRecord& record) {
  TokenId id = arg_token(record);
  const std::string& winner_text = record.at("winner");
  Wei amount = arg_wei(record, "amount");
  Auction& a = current_auction(state, record, id);

  if (a.ended) corrupt(record, "auction already ended");
  if (state.clock <= a.end_time) corrupt(record, "auction ended before its end time");
  std::optional<Address> winner;
  if (!winner_text.empty()) winner = arg_address(record, "winner");
  if (winner != a.highest_bidder) corrupt(record, "winner differs from the highest bidder");
  if (amount != (winner ? a.highest_bid : Wei{})) corrupt(record, "amount differs from the highest bid");

  a.ended = true;
  if (winner) {
    account(state, a.beneficiary).balance += amount;
    a.settled += amount;
  }
}

}  // namespace detail
}  // namespace spectrum

#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <span>
#include <string>
#include <vector>

#include "spectrum/auction.hpp"
#include "spectrum/command_context.hpp"
#include "spectrum/event.hpp"
#include "spectrum/genesis.hpp"
#include "spectrum/journal.hpp"
#include "spectrum/ledger_state.hpp"
#include "spectrum/nfst.hpp"

namespace spectrum {

/// Rebuilds state by applying `records` to `base` in order.
/// Throws LedgerError(CorruptJournal | GenesisMismatch).
LedgerState replay_onto(LedgerState base, std::span<const EventRecord> records);
LedgerState replay(const GenesisConfig& genesis, std::span<const EventRecord> records);

/// Single-writer ledger.
///
/// Every mutating call is one command: it runs against a private copy of the
/// current state, its events are handed to the journal sink, and only then is
/// the new state published. A command that throws leaves no trace. Readers
/// take an immutable snapshot and never observe a half-applied command.
class Ledger {
 public:
  using WallClock = std::function<Timestamp()>;

  explicit Ledger(const GenesisConfig& genesis, JournalSink* sink = nullptr, WallClock wall_clock = {});
  /// Resumes from a recovered state and the full event history it came from.
  Ledger(LedgerState state, std::vector<EventRecord> history, JournalSink* sink = nullptr,
         WallClock wall_clock = {});

  Ledger(const Ledger&) = delete;
  Ledger& operator=(const Ledger&) = delete;

  // Commands.
  Wei faucet(const Address& caller, const Address& to, Wei amount, Role role = Role::Plain);
  Timestamp advance_time(const Address& caller, Seconds delta);
  std::vector<TokenId> mint_nfst(const Address& caller, const Address& owner, FrequencyMhz start,
                                 FrequencyMhz end, const std::string& location);
  UserGrant set_user(const Address& caller, TokenId id, const Address& user, Seconds lease_duration);
  AuctionView start_auction(const Address& caller, TokenId id, Seconds auction_duration, Seconds lease_duration,
                            const Address& beneficiary, Wei starting_price);
  AuctionView bid(const Address& caller, TokenId id, Wei amount);
  Settlement end_auction(const Address& caller, TokenId id);
  Wei withdraw(const Address& caller, TokenId id);

  // Reads.
  std::shared_ptr<const LedgerState> snapshot() const;
  std::vector<EventRecord> events_since(std::uint64_t seq) const;
  std::uint64_t last_seq() const { return snapshot()->last_seq; }
  Timestamp now() const { return snapshot()->clock; }
  Wei balance_of(const Address& address) const { return snapshot()->balance_of(address); }
  std::string state_hash() const;
  const GenesisConfig& genesis() const { return genesis_; }

  /// Runs an arbitrary plan as one atomic command.
  template <class Plan>
  auto execute(Plan&& plan) -> decltype(plan(std::declval<CommandContext&>()));

 private:
  Timestamp sample_now(const LedgerState& state) const;
  void commit(CommandContext&& ctx);

  GenesisConfig genesis_;
  JournalSink* sink_;
  WallClock wall_clock_;

  std::mutex write_mutex_;
  mutable std::shared_mutex read_mutex_;
  std::shared_ptr<const LedgerState> state_;
  std::vector<EventRecord> history_;
};

template <class Plan>
auto Ledger::execute(Plan&& plan) -> decltype(plan(std::declval<CommandContext&>())) {
  std::lock_guard write_lock(write_mutex_);
  auto base = snapshot();
  CommandContext ctx(*base, sample_now(*base));
  if constexpr (std::is_void_v<decltype(plan(ctx))>) {
    plan(ctx);
    commit(std::move(ctx));
  } else {
    auto result = plan(ctx);
    commit(std::move(ctx));
    return result;
  }
}

}  // namespace spectrum

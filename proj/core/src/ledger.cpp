#include "spectrum/ledger.hpp"

#include <chrono>
#include <unordered_map>

#include "event_args.hpp"
#include "spectrum/canonical.hpp"
#include "spectrum/error.hpp"

namespace spectrum {

namespace {

using Applier = void (*)(LedgerState&, const EventRecord&);

const std::unordered_map<std::string_view, Applier>& appliers() {
  static const std::unordered_map<std::string_view, Applier> table{
      {events::kFaucet, detail::apply_faucet},
      {events::kTimeAdvanced, detail::apply_time_advanced},
      {events::kTransfer, detail::apply_transfer},
      {events::kNfstMint, detail::apply_nfst_mint},
      {events::kUpdateUser, detail::apply_update_user},
      {events::kUpdateSpectrumStatus, detail::apply_update_status},
      {events::kAuctionStarted, detail::apply_auction_started},
      {events::kBidPlaced, detail::apply_bid_placed},
      {events::kWithdrawal, detail::apply_return},
      {events::kRefund, detail::apply_return},
      {events::kAuctionEnded, detail::apply_auction_ended},
  };
  return table;
}

Timestamp system_seconds() {
  using namespace std::chrono;
  return static_cast<Timestamp>(duration_cast<seconds>(system_clock::now().time_since_epoch()).count());
}

}  // namespace

void CommandContext::emit_at(Timestamp timestamp, std::string_view event, EventArgs args) {
  EventRecord record{working_.last_seq + 1, timestamp, std::string(event), std::move(args)};
  apply_event(working_, record);
  events_.push_back(std::move(record));
}

void apply_event(LedgerState& state, const EventRecord& record) {
  if (record.seq != state.last_seq + 1) {
    detail::corrupt(record, "expected seq " + std::to_string(state.last_seq + 1));
  }
  auto it = appliers().find(record.event);
  if (it == appliers().end()) detail::corrupt(record, "unknown event name");

  const bool first = state.last_seq == 0;
  if (record.timestamp < state.clock) {
    if (first) fail(ErrorCode::GenesisMismatch, "first journal record predates genesis_time");
    detail::corrupt(record, "timestamp moves the clock backwards");
  }
  if (record.event != events::kTimeAdvanced) {
    if (state.genesis.clock_mode == ClockMode::Sim && record.timestamp != state.clock) {
      if (first) fail(ErrorCode::GenesisMismatch, "first journal record does not match genesis_time");
      detail::corrupt(record, "sim-mode clock changed outside TimeAdvanced");
    }
    state.clock = record.timestamp;
  }
  it->second(state, record);
  state.last_seq = record.seq;
}

namespace detail {

void apply_faucet(LedgerState& state, const EventRecord& record) {
  Address to = arg_address(record, "to");
  Wei amount = arg_wei(record, "amount");
  auto role = role_from_string(record.at("role"));
  if (!role || *role == Role::Sma) corrupt(record, "bad role label");
  if (amount.is_zero()) corrupt(record, "zero faucet amount");

  state.total_issuance += amount;
  auto [it, inserted] = state.accounts.try_emplace(to, Account{to, Wei{}, *role});
  if (!inserted && it->second.role == Role::Plain) it->second.role = *role;
  it->second.balance += amount;
}

void apply_time_advanced(LedgerState& state, const EventRecord& record) {
  if (state.genesis.clock_mode != ClockMode::Sim) corrupt(record, "time advanced outside sim mode");
  auto delta = arg_u64(record, "delta");
  auto now = arg_u64(record, "now");
  if (delta == 0 || now != add_seconds(state.clock, delta) || record.timestamp != now) {
    corrupt(record, "inconsistent clock advance");
  }
  state.clock = now;
}

}  // namespace detail

LedgerState replay_onto(LedgerState base, std::span<const EventRecord> records) {
  for (const auto& record : records) {
    try {
      apply_event(base, record);
    } catch (const LedgerError& e) {
      if (e.code() == ErrorCode::CorruptJournal || e.code() == ErrorCode::GenesisMismatch) throw;
      detail::corrupt(record, e.what());
    }
  }
  return base;
}

LedgerState replay(const GenesisConfig& genesis, std::span<const EventRecord> records) {
  return replay_onto(LedgerState::genesis_state(genesis), records);
}

Ledger::Ledger(const GenesisConfig& genesis, JournalSink* sink, WallClock wall_clock)
    : Ledger(LedgerState::genesis_state(genesis), {}, sink, std::move(wall_clock)) {}

Ledger::Ledger(LedgerState state, std::vector<EventRecord> history, JournalSink* sink, WallClock wall_clock)
    : genesis_(state.genesis),
      sink_(sink),
      wall_clock_(wall_clock ? std::move(wall_clock) : WallClock(system_seconds)),
      state_(std::make_shared<const LedgerState>(std::move(state))),
      history_(std::move(history)) {
  if (history_.size() != state_->last_seq) {
    fail(ErrorCode::CorruptJournal, "journal holds " + std::to_string(history_.size()) +
                                        " records but the state is at seq " + std::to_string(state_->last_seq));
  }
}

std::shared_ptr<const LedgerState> Ledger::snapshot() const {
  std::shared_lock lock(read_mutex_);
  return state_;
}

std::vector<EventRecord> Ledger::events_since(std::uint64_t seq) const {
  std::shared_lock lock(read_mutex_);
  if (seq >= history_.size()) return {};
  return {history_.begin() + static_cast<std::ptrdiff_t>(seq), history_.end()};
}

std::string Ledger::state_hash() const { return spectrum::state_hash(*snapshot()); }

Timestamp Ledger::sample_now(const LedgerState& state) const {
  if (genesis_.clock_mode == ClockMode::Sim) return state.clock;
  return std::max(state.clock, wall_clock_());
}

void Ledger::commit(CommandContext&& ctx) {
  const auto& records = ctx.events();
  if (records.empty()) return;
  if (sink_ != nullptr) {
    try {
      sink_->append(records);
    } catch (const LedgerError&) {
      throw;
    } catch (const std::exception& e) {
      fail(ErrorCode::PersistenceFailure, e.what());
    }
  }
  std::vector<EventRecord> appended = records;
  auto next = std::make_shared<const LedgerState>(std::move(ctx).take_state());
  std::unique_lock lock(read_mutex_);
  state_ = std::move(next);
  history_.insert(history_.end(), std::make_move_iterator(appended.begin()),
                  std::make_move_iterator(appended.end()));
}

Wei Ledger::faucet(const Address& caller, const Address& to, Wei amount, Role role) {
  return execute([&](CommandContext& ctx) {
    const auto& state = ctx.state();
    if (caller != state.genesis.sma) fail(ErrorCode::NotAuthorized, "only the SMA may mint currency");
    if (amount.is_zero()) fail(ErrorCode::InvalidArgument, "faucet amount must be positive");
    if (to.is_zero()) fail(ErrorCode::InvalidArgument, "faucet recipient must not be the zero address");
    if (role == Role::Sma) fail(ErrorCode::InvalidArgument, "the SMA role is fixed at genesis");
    (void)state.total_issuance.checked_add(amount);
    Wei balance = state.balance_of(to).checked_add(amount);
    ctx.emit(events::kFaucet, {{"to", to.to_string()},
                               {"amount", amount.to_string()},
                               {"role", std::string(to_string(role))}});
    return balance;
  });
}

Timestamp Ledger::advance_time(const Address& caller, Seconds delta) {
  return execute([&](CommandContext& ctx) {
    const auto& state = ctx.state();
    if (caller != state.genesis.sma) fail(ErrorCode::NotAuthorized, "only the SMA may advance the clock");
    if (state.genesis.clock_mode != ClockMode::Sim) fail(ErrorCode::NotSimMode, "clock is wall-driven");
    if (delta == 0) fail(ErrorCode::ZeroDelta, "delta must be positive");
    Timestamp now = add_seconds(state.clock, delta);
    ctx.emit_at(now, events::kTimeAdvanced, {{"delta", std::to_string(delta)}, {"now", std::to_string(now)}});
    return now;
  });
}

std::vector<TokenId> Ledger::mint_nfst(const Address& caller, const Address& owner, FrequencyMhz start,
                                       FrequencyMhz end, const std::string& location) {
  return execute([&](CommandContext& ctx) { return registry::mint_nfst(ctx, caller, owner, start, end, location); });
}

UserGrant Ledger::set_user(const Address& caller, TokenId id, const Address& user, Seconds lease_duration) {
  return execute([&](CommandContext& ctx) { return registry::set_user(ctx, caller, id, user, lease_duration); });
}

AuctionView Ledger::start_auction(const Address& caller, TokenId id, Seconds auction_duration,
                                  Seconds lease_duration, const Address& beneficiary, Wei starting_price) {
  return execute([&](CommandContext& ctx) {
    return auction::start_auction(ctx, caller, id, auction_duration, lease_duration, beneficiary, starting_price);
  });
}

AuctionView Ledger::bid(const Address& caller, TokenId id, Wei amount) {
  return execute([&](CommandContext& ctx) { return auction::bid(ctx, caller, id, amount); });
}

Settlement Ledger::end_auction(const Address& caller, TokenId id) {
  return execute([&](CommandContext& ctx) { return auction::end_auction(ctx, caller, id); });
}

Wei Ledger::withdraw(const Address& caller, TokenId id) {
  return execute([&](CommandContext& ctx) { return auction::withdraw(ctx, caller, id); });
}

}  // namespace spectrum

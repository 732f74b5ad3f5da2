#pragma once

// Randomized command sequences with invariant checks after every command.
// The shadow bookkeeping below is maintained purely from command results,
// independent of the ledger's internal counters.

#include <cstdint>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "spectrum/canonical.hpp"
#include "spectrum/error.hpp"
#include "spectrum/journal.hpp"
#include "spectrum/ledger.hpp"

namespace spectrum::testing {

struct PropertyReport {
  std::uint64_t commands = 0;
  std::uint64_t accepted = 0;
  std::uint64_t rejected = 0;
  std::uint64_t bids_accepted = 0;
  std::uint64_t auctions_settled = 0;
  std::map<std::string, std::uint64_t> violations;  // property letter -> count
  std::vector<std::string> first_failures;

  void violate(const std::string& property, const std::string& detail) {
    ++violations[property];
    if (first_failures.size() < 10) first_failures.push_back(property + ": " + detail);
  }
  void merge(const PropertyReport& other) {
    commands += other.commands;
    accepted += other.accepted;
    rejected += other.rejected;
    bids_accepted += other.bids_accepted;
    auctions_settled += other.auctions_settled;
    for (const auto& [k, v] : other.violations) violations[k] += v;
    for (const auto& f : other.first_failures)
      if (first_failures.size() < 10) first_failures.push_back(f);
  }
  bool clean() const { return violations.empty(); }
  std::string describe() const {
    std::string out;
    for (const auto& [k, v] : violations) out += k + "=" + std::to_string(v) + " ";
    for (const auto& f : first_failures) out += "\n  " + f;
    return out;
  }
};

class PropertyRun {
 public:
  explicit PropertyRun(std::uint64_t seed) : rng_(seed) {
    for (int i = 0; i < 10; ++i) {
      Address::Bytes bytes{};
      bytes[0] = 0xa0;
      bytes[19] = static_cast<std::uint8_t>(i + 1);
      bytes[10] = static_cast<std::uint8_t>(seed & 0xff);
      accounts_.emplace_back(bytes);
    }
    sma_ = accounts_[0];
    owners_ = {accounts_[1], accounts_[2]};
    bidders_.assign(accounts_.begin() + 3, accounts_.end());
    genesis_ = GenesisConfig{sma_, ClockMode::Sim, 1'700'000'000, 20};
  }

  PropertyReport run(int steps) {
    Ledger ledger(genesis_, &journal_);
    // Seed: funds for every bidder and five tokens across two owners.
    for (const auto& b : bidders_) {
      Wei amount = Wei::ether(3 + pick(0, 5));
      step(ledger, [&] {
        ledger.faucet(sma_, b, amount);
        shadow_balance_[b] += amount.value();
        issuance_ += amount.value();
      });
    }
    step(ledger, [&] { note_mint(ledger.mint_nfst(sma_, owners_[0], FrequencyMhz{3300}, FrequencyMhz{3360}, "cell-a"), owners_[0]); });
    step(ledger, [&] { note_mint(ledger.mint_nfst(sma_, owners_[1], FrequencyMhz{2500}, FrequencyMhz{2540}, "cell-b"), owners_[1]); });
    for (int i = 0; i < steps; ++i) random_command(ledger);
    check_replay(ledger);
    return report_;
  }

 private:
  struct AuctionShadow {
    Wei::Rep debited = 0;
    Wei::Rep returned = 0;
    Wei::Rep settled = 0;
    std::optional<Wei::Rep> last_bid;
    Wei::Rep starting_price = 0;
  };

  std::uint64_t pick(std::uint64_t lo, std::uint64_t hi) {
    return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng_);
  }
  const Address& any_of(const std::vector<Address>& v) { return v[pick(0, v.size() - 1)]; }
  bool chance(int percent) { return pick(1, 100) <= static_cast<std::uint64_t>(percent); }

  TokenId any_token() {
    if (owner_at_mint_.empty() || chance(5)) return TokenId{pick(90, 99)};
    auto it = owner_at_mint_.begin();
    std::advance(it, static_cast<long>(pick(0, owner_at_mint_.size() - 1)));
    return it->first;
  }

  Wei random_amount_near(Wei::Rep base) {
    static constexpr Wei::Rep kMilli = Wei::kWeiPerEther / 1000;
    switch (pick(0, 4)) {
      case 0: return Wei(base);
      case 1: return Wei(base > kMilli ? base - kMilli : 0);
      case 2: return Wei(base + kMilli * pick(1, 400));
      case 3: return Wei(kMilli * pick(0, 9000));
      default: return Wei(base + 1);
    }
  }

  void note_mint(const std::vector<TokenId>& ids, const Address& owner) {
    for (auto id : ids) owner_at_mint_[id] = owner;
  }

  template <class Fn>
  void step(Ledger& ledger, Fn&& fn) {
    ++report_.commands;
    auto before = ledger.snapshot();
    std::string hash_before = state_hash(*before);
    try {
      fn();
      ++report_.accepted;
    } catch (const LedgerError& e) {
      ++report_.rejected;
      auto after = ledger.snapshot();
      if (state_hash(*after) != hash_before || after->last_seq != before->last_seq) {
        report_.violate("e", std::string("rejected ") + std::string(error_name(e.code())) + " mutated state");
      }
    }
    check_invariants(ledger);
  }

  void random_command(Ledger& ledger) {
    const auto state = ledger.snapshot();
    switch (pick(0, 11)) {
      case 0: {  // faucet
        Address caller = chance(85) ? sma_ : any_of(bidders_);
        Address to = any_of(bidders_);
        Wei amount = chance(90) ? Wei::ether(pick(1, 3)) : Wei{};
        step(ledger, [&] {
          ledger.faucet(caller, to, amount);
          shadow_balance_[to] += amount.value();
          issuance_ += amount.value();
        });
        break;
      }
      case 1: {  // advance time
        Address caller = chance(90) ? sma_ : any_of(owners_);
        Seconds delta = chance(10) ? 0 : pick(1, 2500);
        step(ledger, [&] { ledger.advance_time(caller, delta); });
        break;
      }
      case 2: {  // mint, sometimes misaligned or unauthorized
        Address caller = chance(80) ? sma_ : any_of(owners_);
        Address owner = any_of(owners_);
        std::uint64_t start = 4000 + 20 * pick(0, 100);
        std::uint64_t end = start + (chance(75) ? 20 * pick(1, 3) : pick(0, 30));
        step(ledger, [&] { note_mint(ledger.mint_nfst(caller, owner, FrequencyMhz{start}, FrequencyMhz{end}, "cell-x"), owner); });
        break;
      }
      case 3: {  // direct lease
        TokenId id = any_token();
        Address caller = chance(70) ? owner_or(*state, id) : any_of(bidders_);
        Seconds lease = chance(10) ? 0 : pick(1, 4000);
        step(ledger, [&] { ledger.set_user(caller, id, any_of(bidders_), lease); });
        break;
      }
      case 4:
      case 5: {  // start auction
        TokenId id = any_token();
        Address caller = chance(85) ? owner_or(*state, id) : any_of(bidders_);
        Seconds duration = chance(5) ? 0 : pick(100, 3000);
        Seconds lease = chance(5) ? 0 : pick(100, 5000);
        Address beneficiary = chance(70) ? caller : any_of(owners_);
        Wei price = Wei(Wei::kWeiPerEther / 10 * pick(0, 15));
        step(ledger, [&] {
          ledger.start_auction(caller, id, duration, lease, beneficiary, price);
          shadows_[id] = AuctionShadow{0, 0, 0, std::nullopt, price.value()};
        });
        break;
      }
      case 6:
      case 7:
      case 8: {  // bid
        TokenId id = any_token();
        Address caller = chance(90) ? any_of(bidders_) : owner_or(*state, id);
        Wei::Rep base = 0;
        if (const auto* a = auction::find(*state, id)) base = a->highest_bid.value();
        Wei amount = random_amount_near(base);
        step(ledger, [&] {
          ledger.bid(caller, id, amount);
          ++report_.bids_accepted;
          auto& s = shadows_[id];
          if (s.last_bid ? amount.value() <= *s.last_bid : amount.value() < s.starting_price) {
            report_.violate("b", "accepted bid does not increase");
          }
          s.last_bid = amount.value();
          s.debited += amount.value();
          shadow_balance_[caller] -= amount.value();
        });
        break;
      }
      case 9:
      case 10: {  // end auction
        TokenId id = any_token();
        Address caller = chance(85) ? owner_or(*state, id) : any_of(bidders_);
        std::optional<Address> beneficiary;
        if (const auto* a = auction::find(*state, id)) beneficiary = a->beneficiary;
        step(ledger, [&] {
          auto s = ledger.end_auction(caller, id);
          ++report_.auctions_settled;
          auto& shadow = shadows_[id];
          shadow.settled += s.paid.value();
          if (s.winner) shadow_balance_[*beneficiary] += s.paid.value();
          for (const auto& [bidder, amount] : s.refunds) {
            shadow.returned += amount.value();
            shadow_balance_[bidder] += amount.value();
          }
        });
        break;
      }
      default: {  // withdraw
        TokenId id = any_token();
        Address caller = any_of(bidders_);
        step(ledger, [&] {
          Wei got = ledger.withdraw(caller, id);
          shadows_[id].returned += got.value();
          shadow_balance_[caller] += got.value();
        });
        break;
      }
    }
  }

  Address owner_or(const LedgerState& state, TokenId id) {
    auto it = state.tokens.find(id);
    return it == state.tokens.end() ? any_of(owners_) : it->second.owner;
  }

  void check_invariants(const Ledger& ledger) {
    auto state = ledger.snapshot();
    // (a) conservation against independently tracked issuance.
    if (raw_total_balances(*state) + raw_total_escrow(*state) != issuance_) {
      report_.violate("a", "balances + escrow != issuance");
    }
    // Shadow balances from command results.
    for (const auto& [address, account] : state->accounts) {
      auto it = shadow_balance_.find(address);
      Wei::Rep expected = it == shadow_balance_.end() ? 0 : it->second;
      if (account.balance.value() != expected) {
        report_.violate("a", "balance of " + address.to_string() + " differs from the result-driven model");
      }
    }
    // (c) ownership immutability.
    for (const auto& [id, owner] : owner_at_mint_) {
      auto it = state->tokens.find(id);
      if (it == state->tokens.end() || it->second.owner != owner) report_.violate("c", "owner changed");
    }
    // (d) escrow identity per current auction.
    for (const auto& [id, a] : state->auctions) {
      const auto& s = shadows_[id];
      if (s.debited - s.returned - s.settled != raw_escrow(a)) report_.violate("d", "escrow identity");
      // Status derivation by brute force.
      bool idle = !a.ended;
      if ((registry::status_of(*state, id) == SpectrumStatus::Idle) != idle) report_.violate("status", "derived");
      // Lease/auction exclusion.
      if (!a.ended && registry::user_of(*state, id)) report_.violate("exclusion", "open auction on leased token");
    }
  }

  void check_replay(const Ledger& ledger) {
    auto events = ledger.events_since(0);
    std::string live = ledger.state_hash();
    if (state_hash(replay(genesis_, events)) != live) report_.violate("f", "in-memory replay hash differs");
    std::string text;
    for (const auto& record : journal_.records()) text += encode_event_line(record) + "\n";
    auto parsed = parse_journal(text);
    if (state_hash(replay(genesis_, parsed.records)) != live) report_.violate("f", "journal replay hash differs");
  }

  std::mt19937_64 rng_;
  std::vector<Address> accounts_;
  Address sma_;
  std::vector<Address> owners_;
  std::vector<Address> bidders_;
  GenesisConfig genesis_;
  MemoryJournal journal_;

  std::map<TokenId, Address> owner_at_mint_;
  std::map<TokenId, AuctionShadow> shadows_;
  std::map<Address, Wei::Rep> shadow_balance_;
  Wei::Rep issuance_ = 0;
  PropertyReport report_;
};

inline PropertyReport run_property_suite(std::uint64_t base_seed, int sequences, int steps) {
  PropertyReport total;
  for (int i = 0; i < sequences; ++i) total.merge(PropertyRun(base_seed + static_cast<std::uint64_t>(i)).run(steps));
  return total;
}

}  // namespace spectrum::testing

#include <gtest/gtest.h>

#include <random>

#include "../support/expect_error.hpp"
#include "../support/oracles.hpp"
#include "../support/six_bidders.hpp"
#include "spectrum/canonical.hpp"
#include "spectrum/ledger.hpp"

namespace spectrum {
namespace {

using namespace spectrum::testing;

const Address kSu1 = kSixBidders[0].address;

class RegistryTest : public ::testing::Test {
 protected:
  Ledger ledger{fixture_genesis()};

  TokenId mint_fig4() {
    auto ids = ledger.mint_nfst(kSma, kOwner, FrequencyMhz{3350}, FrequencyMhz{3370}, "location1");
    EXPECT_EQ(ids.size(), 1u);
    return ids.at(0);
  }
  std::shared_ptr<const LedgerState> state() const { return ledger.snapshot(); }
};

TEST_F(RegistryTest, MintOfSingleBandMatchesContractLog) {
  auto id = mint_fig4();
  EXPECT_EQ(id, TokenId{1});
  auto events = ledger.events_since(0);
  ASSERT_EQ(events.size(), 2u);
  EXPECT_EQ(events[0].event, "Transfer");
  const auto& mint = events[1];
  EXPECT_EQ(mint.event, "NFSTMint");
  EventArgs expected{{"startFreq", "3350MHz"}, {"endFreq", "3370MHz"}, {"location", "location1"},
                     {"leaseDuration", "0"},   {"NFSTID", "1"},        {"status", "Occupied"}};
  EXPECT_EQ(mint.args, expected);
  EXPECT_EQ(registry::owner_of(*state(), id).to_string(), "0xdd870fa1b7c4700f2bd7f44238821c26f7392148");
  EXPECT_EQ(registry::token(*state(), id).issuer, kSma);
}

TEST_F(RegistryTest, WideBandSplitsIntoMinAllocChunks) {
  auto ids = ledger.mint_nfst(kSma, kOwner, FrequencyMhz{3350}, FrequencyMhz{3410}, "loc");
  auto oracle = minting_loop(3350, 3410, 20);
  ASSERT_EQ(oracle, (std::vector<Chunk>{{3350, 3370}, {3370, 3390}, {3390, 3410}}));
  ASSERT_EQ(ids.size(), oracle.size());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const auto& band = registry::token(*state(), ids[i]).band;
    EXPECT_EQ(band.start.value, oracle[i].start);
    EXPECT_EQ(band.end.value, oracle[i].end);
    EXPECT_EQ(ids[i], TokenId{i + 1});
  }
}

TEST_F(RegistryTest, MintErrors) {
  EXPECT_LEDGER_ERROR(ledger.mint_nfst(kSu1, kOwner, FrequencyMhz{3350}, FrequencyMhz{3370}, "l"),
                      ErrorCode::NotAuthorized);
  EXPECT_LEDGER_ERROR(ledger.mint_nfst(kSma, kOwner, FrequencyMhz{3370}, FrequencyMhz{3370}, "l"),
                      ErrorCode::InvalidBand);
  EXPECT_LEDGER_ERROR(ledger.mint_nfst(kSma, kOwner, FrequencyMhz{3390}, FrequencyMhz{3370}, "l"),
                      ErrorCode::InvalidBand);
  EXPECT_LEDGER_ERROR(ledger.mint_nfst(kSma, kOwner, FrequencyMhz{3350}, FrequencyMhz{3375}, "l"),
                      ErrorCode::MisalignedBand);
  EXPECT_LEDGER_ERROR(ledger.mint_nfst(kSma, Address{}, FrequencyMhz{3350}, FrequencyMhz{3370}, "l"),
                      ErrorCode::InvalidArgument);
  EXPECT_LEDGER_ERROR(ledger.mint_nfst(kSma, kOwner, FrequencyMhz{3350}, FrequencyMhz{3370}, ""),
                      ErrorCode::InvalidArgument);
  EXPECT_EQ(ledger.last_seq(), 0u);
}

// Random (start, end, minAlloc) triples: tiling when divisible, rejection otherwise.
TEST(BandPartitionProperty, TilesExactlyOrRejects) {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 200; ++i) {
    std::uint64_t min_alloc = 1 + rng() % 50;
    std::uint64_t start = rng() % 6000;
    std::uint64_t width = 1 + rng() % 400;
    Ledger ledger(GenesisConfig{kSma, ClockMode::Sim, 0, min_alloc});
    if (divisible_by_subtraction(width, min_alloc)) {
      auto ids = ledger.mint_nfst(kSma, kOwner, FrequencyMhz{start}, FrequencyMhz{start + width}, "l");
      auto oracle = minting_loop(start, start + width, min_alloc);
      ASSERT_EQ(ids.size(), oracle.size());
      auto st = ledger.snapshot();
      for (std::size_t k = 0; k < ids.size(); ++k) {
        EXPECT_EQ(registry::token(*st, ids[k]).band.start.value, oracle[k].start);
        EXPECT_EQ(registry::token(*st, ids[k]).band.end.value, oracle[k].end);
      }
    } else {
      EXPECT_LEDGER_ERROR(ledger.mint_nfst(kSma, kOwner, FrequencyMhz{start}, FrequencyMhz{start + width}, "l"),
                          ErrorCode::MisalignedBand);
      // The unguarded loop would overrun the licensed band.
      EXPECT_GT(minting_loop(start, start + width, min_alloc).back().end, start + width);
    }
  }
}

TEST_F(RegistryTest, OwnerOfUnknownToken) {
  EXPECT_LEDGER_ERROR(registry::owner_of(*state(), TokenId{999}), ErrorCode::UnknownToken);
  EXPECT_LEDGER_ERROR(registry::user_of(*state(), TokenId{999}), ErrorCode::UnknownToken);
  EXPECT_LEDGER_ERROR(registry::status_of(*state(), TokenId{999}), ErrorCode::UnknownToken);
  EXPECT_LEDGER_ERROR(registry::token_info(*state(), TokenId{999}), ErrorCode::UnknownToken);
}

TEST_F(RegistryTest, FreshTokenHasNoUser) {
  auto id = mint_fig4();
  EXPECT_FALSE(registry::user_of(*state(), id));
  EXPECT_FALSE(registry::user_expires(*state(), id));
  EXPECT_EQ(registry::status_of(*state(), id), SpectrumStatus::Occupied);
}

TEST_F(RegistryTest, GrantExpiresWithoutAnyCommand) {
  auto id = mint_fig4();
  // Clock at genesis; lease chosen so expiry lands on the contract-log value.
  auto grant = ledger.set_user(kOwner, id, kWinner, kLeaseExpires - kGenesisTime);
  EXPECT_EQ(grant.expires, kLeaseExpires);

  auto events = ledger.events_since(2);
  ASSERT_EQ(events.size(), 2u);
  EXPECT_EQ(events[0].event, "UpdateUser");
  EXPECT_EQ(events[0].args, (EventArgs{{"tokenId", "1"},
                                       {"user", "0x17f6ad8ef982297579c203069c1dbffe4348c372"},
                                       {"expires", "1703136913"}}));
  EXPECT_EQ(events[1].event, "UpdateSpectrumStatus");
  EXPECT_EQ(events[1].args, (EventArgs{{"tokenId", "1"}, {"status", "Occupied"}}));

  // Read-time reset: same stored state, different clock.
  LedgerState at = *state();
  at.clock = kLeaseExpires;
  EXPECT_EQ(registry::user_of(at, id), kWinner);
  at.clock = kLeaseExpires + 1;
  EXPECT_FALSE(registry::user_of(at, id));
  EXPECT_EQ(registry::user_expires(at, id), kLeaseExpires);
  EXPECT_EQ(registry::status_of(at, id), SpectrumStatus::Occupied);
}

TEST_F(RegistryTest, SetUserErrors) {
  auto id = mint_fig4();
  EXPECT_LEDGER_ERROR(ledger.set_user(kSu1, id, kSu1, 10), ErrorCode::NotAuthorized);
  EXPECT_LEDGER_ERROR(ledger.set_user(kOwner, TokenId{7}, kSu1, 10), ErrorCode::UnknownToken);
  EXPECT_LEDGER_ERROR(ledger.set_user(kOwner, id, kSu1, 0), ErrorCode::ZeroDuration);
  EXPECT_LEDGER_ERROR(ledger.set_user(kOwner, id, Address{}, 10), ErrorCode::InvalidArgument);
  ledger.start_auction(kOwner, id, 100, 100, kOwner, Wei::ether(1));
  EXPECT_LEDGER_ERROR(ledger.set_user(kOwner, id, kSu1, 10), ErrorCode::AuctionAlreadyOpen);
}

// A second grant is refused for as long as the first is effective, and
// accepted the moment it lapses.
TEST_F(RegistryTest, DoubleGrantRejectedProperty) {
  auto id = mint_fig4();
  std::mt19937_64 rng(5);
  for (int round = 0; round < 40; ++round) {
    Seconds lease = 1 + rng() % 500;
    auto grant = ledger.set_user(kOwner, id, kSixBidders[rng() % 6].address, lease);
    while (ledger.now() < grant.expires) {
      EXPECT_LEDGER_ERROR(ledger.set_user(kOwner, id, kSixBidders[rng() % 6].address, 1 + rng() % 50),
                          ErrorCode::AlreadyLeased);
      ledger.advance_time(kSma, std::min<Seconds>(grant.expires - ledger.now(), 1 + rng() % 200));
    }
    EXPECT_LEDGER_ERROR(ledger.set_user(kOwner, id, kSu1, 5), ErrorCode::AlreadyLeased);  // now == expires
    ledger.advance_time(kSma, 1);
    EXPECT_FALSE(registry::user_of(*state(), id));
  }
}

TEST_F(RegistryTest, StatusFollowsAuctionLifecycle) {
  auto id = mint_fig4();
  EXPECT_EQ(registry::status_of(*state(), id), SpectrumStatus::Occupied);
  ledger.start_auction(kOwner, id, 100, 100, kOwner, Wei::ether(1));
  EXPECT_EQ(registry::status_of(*state(), id), SpectrumStatus::Idle);
  ledger.advance_time(kSma, 101);
  ledger.end_auction(kOwner, id);
  EXPECT_EQ(registry::status_of(*state(), id), SpectrumStatus::Occupied);
}

TEST_F(RegistryTest, ListIdleMatchesStatusScan) {
  ledger.mint_nfst(kSma, kOwner, FrequencyMhz{3000}, FrequencyMhz{3100}, "l");
  EXPECT_TRUE(registry::list_idle(*state()).empty());
  ledger.start_auction(kOwner, TokenId{1}, 100, 100, kOwner, Wei::ether(1));
  ledger.start_auction(kOwner, TokenId{4}, 50, 100, kSu1, Wei::ether(2));
  ledger.faucet(kSma, kSu1, Wei::ether(5));
  ledger.bid(kSu1, TokenId{1}, Wei::ether(3));

  auto idle = registry::list_idle(*state());
  std::vector<TokenId> scanned;
  for (const auto& [id, _] : state()->tokens) {
    if (registry::status_of(*state(), id) == SpectrumStatus::Idle) scanned.push_back(id);
  }
  ASSERT_EQ(idle.size(), scanned.size());
  for (std::size_t i = 0; i < idle.size(); ++i) EXPECT_EQ(idle[i].id, scanned[i]);
  EXPECT_EQ(idle[0].highest_bid, Wei::ether(3));
  EXPECT_EQ(idle[0].highest_bidder, kSu1);
  EXPECT_EQ(idle[1].beneficiary, kSu1);
  EXPECT_EQ(idle[1].end_time, kGenesisTime + 50);

  ledger.advance_time(kSma, 101);
  ledger.end_auction(kOwner, TokenId{1});
  ledger.end_auction(kOwner, TokenId{4});
  EXPECT_TRUE(registry::list_idle(*state()).empty());
}

TEST_F(RegistryTest, TokenInfoAggregates) {
  auto id = mint_fig4();
  auto info = registry::token_info(*state(), id);
  EXPECT_EQ(info.band, (SpectrumBand{FrequencyMhz{3350}, FrequencyMhz{3370}, "location1"}));
  EXPECT_EQ(info.owner, kOwner);
  EXPECT_FALSE(info.user);
  EXPECT_EQ(info.status, SpectrumStatus::Occupied);

  ledger.set_user(kOwner, id, kWinner, 10);
  info = registry::token_info(*state(), id);
  EXPECT_EQ(info.user, kWinner);
  ledger.advance_time(kSma, 11);
  info = registry::token_info(*state(), id);
  EXPECT_FALSE(info.user);
  EXPECT_EQ(info.user_expires, kGenesisTime + 10);
  EXPECT_EQ(info.status, SpectrumStatus::Occupied);
}

TEST_F(RegistryTest, MintLabelsOwnerAsPrimaryUser) {
  mint_fig4();
  EXPECT_EQ(state()->accounts.at(kOwner).role, Role::Pu);
}

}  // namespace
}  // namespace spectrum

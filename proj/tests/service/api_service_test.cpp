#include <gtest/gtest.h>

#include <fstream>

#include "../support/api_helpers.hpp"
#include "../support/six_bidders.hpp"
#include "spectrum/canonical.hpp"
#include "spectrum/journal.hpp"
#include "spectrum/ledger.hpp"

namespace spectrum {
namespace {

using namespace spectrum::testing;
using json = nlohmann::ordered_json;
using service::ApiResponse;
using service::ApiService;

const Address& kSu1() { return kSixBidders[0].address; }

class ApiTest : public ::testing::Test {
 protected:
  ApiResponse call(const service::ApiRequest& r) { return api.handle(r); }

  void seed_auction() {
    for (const auto& b : kSixBidders) {
      ASSERT_EQ(call(post("/admin/faucet", {{"to", b.address.to_string()}, {"amountEther", "5"}}, kSma)).status, 200);
    }
    auto minted = call(post("/admin/mint",
                            {{"owner", kOwner.to_string()}, {"startFreqMhz", 3350}, {"endFreqMhz", 3370},
                             {"geoLocation", "location1"}},
                            kSma));
    ASSERT_EQ(minted.status, 200) << minted.body.dump();
    auto started = call(post("/auction/1/start",
                             {{"auctionDurationSec", 3600}, {"leaseDurationSec", 604800},
                              {"beneficiary", kOwner.to_string()}, {"startingPriceEther", "1.0"}},
                             kOwner));
    ASSERT_EQ(started.status, 200) << started.body.dump();
  }

  ApiService api{fixture_service_config()};
};

TEST_F(ApiTest, EnvelopeOnSuccess) {
  auto r = call(get("/healthz"));
  EXPECT_EQ(r.status, 200);
  EXPECT_EQ(r.body["ok"], true);
  EXPECT_EQ(r.body["seq"], 0);
  EXPECT_EQ(r.body["data"]["clockMode"], "sim");
  EXPECT_EQ(r.body["data"]["now"], kGenesisTime);
  std::vector<std::string> keys;
  for (const auto& [k, _] : r.body.items()) keys.push_back(k);
  EXPECT_EQ(keys, (std::vector<std::string>{"ok", "seq", "data"}));
}

TEST_F(ApiTest, MintReturnsTokenIds) {
  auto r = call(post("/admin/mint",
                     {{"owner", kOwner.to_string()}, {"startFreqMhz", "3300MHz"}, {"endFreqMhz", 3360},
                      {"geoLocation", "cell"}},
                     kSma));
  ASSERT_EQ(r.status, 200);
  EXPECT_EQ(r.body["data"]["tokenIds"], json::array({1, 2, 3}));
  EXPECT_EQ(r.body["seq"], 6);
}

TEST_F(ApiTest, SixBidderBidWithAmountFieldAsPuBuyer3) {
  seed_auction();
  auto r = call(post("/auction/1/bid", {{"amount", "3.5"}}, kWinner));
  ASSERT_EQ(r.status, 200) << r.body.dump();
  EXPECT_EQ(r.body["data"]["highestBidder"], kWinner.to_string());
  EXPECT_EQ(r.body["data"]["highestBid"], "3.5");
  EXPECT_EQ(r.body["data"]["highestBidWei"], "3500000000000000000");
}

TEST_F(ApiTest, MissingOrMalformedCallerIs401BeforeStateAccess) {
  seed_auction();
  auto hash = api.ledger().state_hash();
  auto seq = api.ledger().last_seq();
  auto r = call(post("/auction/1/bid", {{"amountEther", "3.5"}}, std::nullopt));
  EXPECT_EQ(r.status, 401);
  EXPECT_EQ(r.body["ok"], false);
  EXPECT_EQ(r.body["error"]["code"], "NotAuthorized");

  auto bad = post("/auction/1/bid", {{"amountEther", "3.5"}}, std::nullopt);
  bad.caller = "0x1234";
  EXPECT_EQ(call(bad).status, 401);
  // Even a malformed body is not looked at without a caller.
  auto garbage = post("/auction/1/bid", {}, std::nullopt);
  garbage.body = "{not json";
  EXPECT_EQ(call(garbage).status, 401);
  EXPECT_EQ(api.ledger().state_hash(), hash);
  EXPECT_EQ(api.ledger().last_seq(), seq);
}

TEST_F(ApiTest, MalformedRequestsAre400) {
  seed_auction();
  auto garbage = post("/auction/1/bid", {}, kSu1());
  garbage.body = "{not json";
  auto r = call(garbage);
  EXPECT_EQ(r.status, 400);
  EXPECT_EQ(r.body["error"]["code"], "InvalidArgument");

  EXPECT_EQ(call(post("/auction/1/bid", {}, kSu1())).status, 400);
  EXPECT_EQ(call(post("/auction/1/bid", {{"amountEther", 2.5}}, kSu1())).status, 400);
  EXPECT_EQ(call(post("/auction/1/bid", {{"amountEther", "2.5e0"}}, kSu1())).status, 400);
  EXPECT_EQ(call(post("/auction/abc/bid", {{"amountEther", "2.5"}}, kSu1())).status, 400);
  EXPECT_EQ(call(post("/admin/faucet", {{"to", "0xnothex"}, {"amountEther", "1"}}, kSma)).status, 400);
  EXPECT_EQ(call(post("/admin/faucet", {{"to", kSu1().to_string()}, {"amountEther", "1"}, {"role", "SMA"}}, kSma)).status,
            400);
  EXPECT_EQ(call(get("/accounts/nope")).status, 400);
  auto since = get("/events");
  since.query["since"] = "x";
  EXPECT_EQ(call(since).status, 400);
}

TEST_F(ApiTest, UnknownRouteAndTokenAre404) {
  auto r = call(get("/nope"));
  EXPECT_EQ(r.status, 404);
  EXPECT_EQ(r.body["error"]["code"], "NotFound");
  EXPECT_EQ(call(post("/nfst/1", {}, kSma)).status, 404);
  EXPECT_EQ(call(get("/auction/1/bid")).status, 404);

  auto unknown = call(get("/nfst/99"));
  EXPECT_EQ(unknown.status, 404);
  EXPECT_EQ(unknown.body["error"]["code"], "UnknownToken");
  EXPECT_EQ(call(get("/auction/99")).status, 404);
  EXPECT_EQ(call(post("/auction/99/bid", {{"amountEther", "1"}}, kSu1())).status, 404);
}

TEST_F(ApiTest, DomainErrorsAre409WithExactCode) {
  seed_auction();
  call(post("/auction/1/bid", {{"amountEther", "3.5"}}, kWinner));
  auto self = call(post("/auction/1/bid", {{"amountEther", "4"}}, kWinner));
  EXPECT_EQ(self.status, 409);
  EXPECT_EQ(self.body["error"]["code"], "SelfOutbid");
  EXPECT_EQ(call(post("/auction/1/end", {}, kSu1())).body["error"]["code"], "NotAuthorized");
  EXPECT_EQ(call(post("/auction/1/end", {}, kSu1())).status, 409);
  EXPECT_EQ(call(post("/admin/advance-time", {{"seconds", 0}}, kSma)).body["error"]["code"], "ZeroDelta");
  EXPECT_EQ(call(post("/admin/mint",
                      {{"owner", kOwner.to_string()}, {"startFreqMhz", 100}, {"endFreqMhz", 130},
                       {"geoLocation", "x"}},
                      kSma))
                .body["error"]["code"],
            "MisalignedBand");
}

TEST_F(ApiTest, IdleListsOpenAuctions) {
  EXPECT_EQ(call(get("/spectrum/idle")).body["data"]["idle"], json::array());
  seed_auction();
  auto idle = call(get("/spectrum/idle")).body["data"]["idle"];
  ASSERT_EQ(idle.size(), 1u);
  EXPECT_EQ(idle[0]["tokenId"], 1);
  EXPECT_EQ(idle[0]["startFreq"], "3350MHz");
  EXPECT_EQ(idle[0]["beneficiary"], kOwner.to_string());
  EXPECT_EQ(idle[0]["highestBidder"], "");
  EXPECT_EQ(idle[0]["highestBid"], "1.0");
}

TEST_F(ApiTest, FullSixBidderOverTheApi) {
  seed_auction();
  for (const auto& b : kSixBidders) {
    auto r = call(post("/auction/1/bid", {{"amountEther", std::string(b.amount)}}, b.address));
    ASSERT_EQ(r.status, 200) << b.name << " " << r.body.dump();
  }
  auto pending = call(get("/accounts/" + kSixBidders[4].address.to_string())).body["data"]["pendingReturns"];
  ASSERT_EQ(pending.size(), 1u);
  EXPECT_EQ(pending[0]["amount"], "3.1");

  call(post("/admin/advance-time", {{"seconds", kAuctionDuration + 1}}, kSma));
  auto end = call(post("/auction/1/end", {}, kOwner));
  ASSERT_EQ(end.status, 200) << end.body.dump();
  EXPECT_EQ(end.body["data"]["winner"], kWinner.to_string());
  EXPECT_EQ(end.body["data"]["paid"], "3.5");
  EXPECT_EQ(end.body["data"]["expires"], kLeaseExpires);
  EXPECT_EQ(end.body["data"]["refunds"].size(), 5u);

  auto info = call(get("/nfst/1")).body["data"];
  EXPECT_EQ(info["user"], kWinner.to_string());
  EXPECT_EQ(info["userExpires"], kLeaseExpires);
  EXPECT_EQ(info["status"], "Occupied");
  auto auction = call(get("/auction/1")).body["data"];
  EXPECT_EQ(auction["ended"], true);
  EXPECT_EQ(auction["pendingReturns"], json::array());

  auto accounts = call(get("/accounts")).body["data"]["accounts"];
  EXPECT_EQ(accounts.size(), 8u);  // SMA, owner, six bidders
  for (const auto& a : accounts) {
    if (a["address"] == kOwner.to_string()) EXPECT_EQ(a["balance"], "3.5");
  }
}

TEST_F(ApiTest, EventsSinceKeepsArgOrder) {
  seed_auction();
  auto r = call(get("/events"));
  auto events = r.body["data"]["events"];
  ASSERT_EQ(events.size(), 10u);
  EXPECT_EQ(events[7]["event"], "NFSTMint");
  std::vector<std::string> keys;
  for (const auto& [k, _] : events[7]["args"].items()) keys.push_back(k);
  EXPECT_EQ(keys, (std::vector<std::string>{"startFreq", "endFreq", "location", "leaseDuration", "NFSTID", "status"}));

  auto tail = get("/events");
  tail.query["since"] = "8";
  auto later = call(tail).body["data"]["events"];
  ASSERT_EQ(later.size(), 2u);
  EXPECT_EQ(later[0]["seq"], 9);
}

TEST_F(ApiTest, StateHashMatchesLedger) {
  seed_auction();
  EXPECT_EQ(call(get("/state-hash")).body["data"]["stateHash"], api.ledger().state_hash());
}

TEST_F(ApiTest, SetUserEndpoint) {
  seed_auction();
  call(post("/admin/mint",
            {{"owner", kOwner.to_string()}, {"startFreqMhz", 100}, {"endFreqMhz", 120}, {"geoLocation", "x"}}, kSma));
  auto r = call(post("/nfst/2/set-user", {{"user", kSu1().to_string()}, {"leaseDurationSec", 60}}, kOwner));
  ASSERT_EQ(r.status, 200) << r.body.dump();
  EXPECT_EQ(r.body["data"]["expires"], kGenesisTime + 60);
  EXPECT_EQ(call(post("/nfst/1/set-user", {{"user", kSu1().to_string()}, {"leaseDurationSec", 60}}, kOwner))
                .body["error"]["code"],
            "AuctionAlreadyOpen");
}

}  // namespace
}  // namespace spectrum

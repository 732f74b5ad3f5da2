#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "spectrum/client/transport.hpp"

namespace spectrum::client {

class UnknownOperation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Maps an operation name plus params to one endpoint call. Params use the
/// API's field names; "tokenId", "address" and "since" go into the path.
///
///   faucet {to, amountEther, role?}       mint {owner, startFreqMhz, endFreqMhz, geoLocation}
///   advance-time {seconds}                set-user {tokenId, user, leaseDurationSec}
///   start {tokenId, auctionDurationSec, leaseDurationSec, beneficiary, startingPriceEther}
///   bid {tokenId, amountEther}            end {tokenId}     withdraw {tokenId}
///   idle    info {tokenId}    auction {tokenId}    account {address}    accounts
///   events {since?}    state-hash    health
Call make_call(const std::string& op, const nlohmann::ordered_json& params);

const std::vector<std::string>& operation_names();

}  // namespace spectrum::client

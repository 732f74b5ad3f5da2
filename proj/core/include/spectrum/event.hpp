#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "spectrum/types.hpp"

namespace spectrum {

/// Ordered key/value pairs. Order is preserved in the journal so the mint and
/// lease events render with the same key order as the contract logs they
/// mirror.
using EventArgs = std::vector<std::pair<std::string, std::string>>;

struct EventRecord {
  std::uint64_t seq = 0;
  Timestamp timestamp = 0;
  std::string event;
  EventArgs args;

  const std::string* find(std::string_view key) const;
  /// Throws LedgerError(CorruptJournal) when the key is missing.
  const std::string& at(std::string_view key) const;

  bool operator==(const EventRecord&) const = default;
};

namespace events {
inline constexpr std::string_view kFaucet = "Faucet";
inline constexpr std::string_view kTimeAdvanced = "TimeAdvanced";
inline constexpr std::string_view kTransfer = "Transfer";
inline constexpr std::string_view kNfstMint = "NFSTMint";
inline constexpr std::string_view kUpdateUser = "UpdateUser";
inline constexpr std::string_view kUpdateSpectrumStatus = "UpdateSpectrumStatus";
inline constexpr std::string_view kAuctionStarted = "AuctionStarted";
inline constexpr std::string_view kBidPlaced = "BidPlaced";
inline constexpr std::string_view kWithdrawal = "Withdrawal";
inline constexpr std::string_view kRefund = "Refund";
inline constexpr std::string_view kAuctionEnded = "AuctionEnded";
}  // namespace events

}  // namespace spectrum

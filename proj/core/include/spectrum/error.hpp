#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace spectrum {

// Names are part of the wire contract: the HTTP API and the CLI render them
// verbatim, so never rename an enumerator without updating error_name().
enum class ErrorCode {
  NotAuthorized,
  Overflow,
  NotSimMode,
  ZeroDelta,
  PersistenceFailure,
  CorruptJournal,
  GenesisMismatch,
  InvalidArgument,
  InvalidBand,
  MisalignedBand,
  UnknownToken,
  AlreadyLeased,
  ZeroDuration,
  CurrentlyLeased,
  AuctionAlreadyOpen,
  NoOpenAuction,
  AuctionExpired,
  SelfOutbid,
  BidTooLow,
  InsufficientFunds,
  OwnerBid,
  AuctionStillRunning,
  AlreadyEnded,
  NoAuction,
  NothingToWithdraw,
};

std::string_view error_name(ErrorCode code);
std::optional<ErrorCode> error_from_name(std::string_view name);

class LedgerError : public std::runtime_error {
 public:
  LedgerError(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace spectrum

#include "spectrum/error.hpp"

#include <array>
#include <utility>

namespace spectrum {

namespace {

constexpr std::array<std::pair<ErrorCode, std::string_view>, 25> kNames{{
    {ErrorCode::NotAuthorized, "NotAuthorized"},
    {ErrorCode::Overflow, "Overflow"},
    {ErrorCode::NotSimMode, "NotSimMode"},
    {ErrorCode::ZeroDelta, "ZeroDelta"},
    {ErrorCode::PersistenceFailure, "PersistenceFailure"},
    {ErrorCode::CorruptJournal, "CorruptJournal"},
    {ErrorCode::GenesisMismatch, "GenesisMismatch"},
    {ErrorCode::InvalidArgument, "InvalidArgument"},
    {ErrorCode::InvalidBand, "InvalidBand"},
    {ErrorCode::MisalignedBand, "MisalignedBand"},
    {ErrorCode::UnknownToken, "UnknownToken"},
    {ErrorCode::AlreadyLeased, "AlreadyLeased"},
    {ErrorCode::ZeroDuration, "ZeroDuration"},
    {ErrorCode::CurrentlyLeased, "CurrentlyLeased"},
    {ErrorCode::AuctionAlreadyOpen, "AuctionAlreadyOpen"},
    {ErrorCode::NoOpenAuction, "NoOpenAuction"},
    {ErrorCode::AuctionExpired, "AuctionExpired"},
    {ErrorCode::SelfOutbid, "SelfOutbid"},
    {ErrorCode::BidTooLow, "BidTooLow"},
    {ErrorCode::InsufficientFunds, "InsufficientFunds"},
    {ErrorCode::OwnerBid, "OwnerBid"},
    {ErrorCode::AuctionStillRunning, "AuctionStillRunning"},
    {ErrorCode::AlreadyEnded, "AlreadyEnded"},
    {ErrorCode::NoAuction, "NoAuction"},
    {ErrorCode::NothingToWithdraw, "NothingToWithdraw"},
}};

}  // namespace

std::string_view error_name(ErrorCode code) {
  for (const auto& [c, name] : kNames) {
    if (c == code) return name;
  }
  return "Unknown";
}

std::optional<ErrorCode> error_from_name(std::string_view name) {
  for (const auto& [c, n] : kNames) {
    if (n == name) return c;
  }
  return std::nullopt;
}

void fail(ErrorCode code, const std::string& message) { throw LedgerError(code, message); }

}  // namespace spectrum

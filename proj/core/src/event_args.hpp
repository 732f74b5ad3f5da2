#pragma once

// Helpers shared by the event appliers. Any malformed argument in a journal
// record is corruption, never an input error.

#include <charconv>
#include <string>

#include "spectrum/address.hpp"
#include "spectrum/error.hpp"
#include "spectrum/event.hpp"
#include "spectrum/ledger_state.hpp"
#include "spectrum/types.hpp"
#include "spectrum/wei.hpp"

namespace spectrum::detail {

[[noreturn]] inline void corrupt(const EventRecord& record, const std::string& why) {
  fail(ErrorCode::CorruptJournal, "event seq " + std::to_string(record.seq) + " (" + record.event + "): " + why);
}

inline std::uint64_t arg_u64(const EventRecord& record, std::string_view key) {
  const std::string& text = record.at(key);
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    corrupt(record, "arg '" + std::string(key) + "' is not an unsigned integer");
  }
  return value;
}

inline TokenId arg_token(const EventRecord& record, std::string_view key = "tokenId") {
  return TokenId{arg_u64(record, key)};
}

inline Address arg_address(const EventRecord& record, std::string_view key) {
  auto parsed = Address::parse(record.at(key));
  if (!parsed) corrupt(record, "arg '" + std::string(key) + "' is not an address");
  return *parsed;
}

inline Wei arg_wei(const EventRecord& record, std::string_view key) {
  try {
    return Wei::parse(record.at(key));
  } catch (const LedgerError&) {
    corrupt(record, "arg '" + std::string(key) + "' is not a wei amount");
  }
}

inline FrequencyMhz arg_frequency(const EventRecord& record, std::string_view key) {
  const std::string& text = record.at(key);
  if (text.size() < 4 || text.substr(text.size() - 3) != "MHz") {
    corrupt(record, "arg '" + std::string(key) + "' is not rendered as <int>MHz");
  }
  try {
    return parse_frequency(text);
  } catch (const LedgerError&) {
    corrupt(record, "arg '" + std::string(key) + "' is not a frequency");
  }
}

// Appliers, one per event kind. Each validates the record against `state`.
void apply_faucet(LedgerState& state, const EventRecord& record);
void apply_time_advanced(LedgerState& state, const EventRecord& record);

void apply_transfer(LedgerState& state, const EventRecord& record);
void apply_nfst_mint(LedgerState& state, const EventRecord& record);
void apply_update_user(LedgerState& state, const EventRecord& record);
void apply_update_status(LedgerState& state, const EventRecord& record);

void apply_auction_started(LedgerState& state, const EventRecord& record);
void apply_bid_placed(LedgerState& state, const EventRecord& record);
void apply_return(LedgerState& state, const EventRecord& record);  // Withdrawal and Refund
void apply_auction_ended(LedgerState& state, const EventRecord& record);

}  // namespace spectrum::detail

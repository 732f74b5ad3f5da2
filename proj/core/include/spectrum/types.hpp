#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace spectrum {

/// Unix seconds.
using Timestamp = std::uint64_t;
using Seconds = std::uint64_t;

struct TokenId {
  std::uint64_t value = 0;

  std::string to_string() const { return std::to_string(value); }
  auto operator<=>(const TokenId&) const = default;
};

/// Rendered as "<value>MHz" everywhere it crosses an interface.
struct FrequencyMhz {
  std::uint64_t value = 0;

  std::string to_string() const { return std::to_string(value) + "MHz"; }
  auto operator<=>(const FrequencyMhz&) const = default;
};

/// Accepts "3350MHz" or a bare "3350". Throws LedgerError(InvalidArgument).
FrequencyMhz parse_frequency(const std::string& text);

/// Checked Timestamp + Seconds; throws LedgerError(Overflow).
Timestamp add_seconds(Timestamp base, Seconds delta);

}  // namespace spectrum

#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace spectrum {

/// Integer amount in wei (1 ether = 10^18 wei). Arithmetic is checked:
/// results that would wrap or go negative throw LedgerError(Overflow).
class Wei {
 public:
  using Rep = unsigned __int128;

  static constexpr unsigned kEtherDecimals = 18;
  static constexpr Rep kWeiPerEther = static_cast<Rep>(1'000'000'000'000'000'000ULL);

  constexpr Wei() = default;
  constexpr explicit Wei(Rep value) : value_(value) {}

  static constexpr Wei ether(std::uint64_t whole) { return Wei(static_cast<Rep>(whole) * kWeiPerEther); }

  /// Decimal ether string such as "3.5" or "2". More than 18 fractional
  /// digits, signs, exponents and empty input are rejected (InvalidArgument).
  static Wei from_ether(std::string_view decimal);
  /// Plain base-10 integer wei string, as stored in event args.
  static Wei parse(std::string_view integer);

  /// Integer wei, base 10.
  std::string to_string() const;
  /// Ether with at least one fractional digit: "3.5", "2.0", "0.000000000000000001".
  std::string to_ether_string() const;

  constexpr Rep value() const { return value_; }
  constexpr bool is_zero() const { return value_ == 0; }

  Wei checked_add(Wei other) const;
  Wei checked_sub(Wei other) const;

  Wei& operator+=(Wei other) { return *this = checked_add(other); }
  Wei& operator-=(Wei other) { return *this = checked_sub(other); }
  friend Wei operator+(Wei a, Wei b) { return a.checked_add(b); }
  friend Wei operator-(Wei a, Wei b) { return a.checked_sub(b); }

  auto operator<=>(const Wei&) const = default;

 private:
  Rep value_ = 0;
};

}  // namespace spectrum

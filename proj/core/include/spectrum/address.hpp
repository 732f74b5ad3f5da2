#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace spectrum {

/// 20-byte account identifier.
///
/// Parsing accepts any mix of hex digit case ("0xDD870fA1..."), rendering is
/// always the canonical lowercase form with a 0x prefix (42 characters).
/// The default-constructed value is the zero address.
class Address {
 public:
  static constexpr std::size_t kSize = 20;
  using Bytes = std::array<std::uint8_t, kSize>;

  Address() = default;
  explicit Address(const Bytes& bytes) : bytes_(bytes) {}

  static std::optional<Address> parse(std::string_view text);
  /// Throws LedgerError(InvalidArgument) on malformed input.
  static Address from_string(std::string_view text);

  std::string to_string() const;
  bool is_zero() const;
  const Bytes& bytes() const { return bytes_; }

  auto operator<=>(const Address&) const = default;

 private:
  Bytes bytes_{};
};

}  // namespace spectrum

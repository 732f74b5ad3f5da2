#include "spectrum/address.hpp"

#include <algorithm>

#include "spectrum/error.hpp"

namespace spectrum {

namespace {

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

std::optional<Address> Address::parse(std::string_view text) {
  if (text.size() != 2 + 2 * kSize || text[0] != '0' || (text[1] != 'x' && text[1] != 'X')) {
    return std::nullopt;
  }
  Bytes bytes{};
  for (std::size_t i = 0; i < kSize; ++i) {
    int hi = hex_value(text[2 + 2 * i]);
    int lo = hex_value(text[3 + 2 * i]);
    if (hi < 0 || lo < 0) return std::nullopt;
    bytes[i] = static_cast<std::uint8_t>(hi << 4 | lo);
  }
  return Address(bytes);
}

Address Address::from_string(std::string_view text) {
  auto parsed = parse(text);
  if (!parsed) fail(ErrorCode::InvalidArgument, "malformed address '" + std::string(text) + "'");
  return *parsed;
}

std::string Address::to_string() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out = "0x";
  out.reserve(2 + 2 * kSize);
  for (auto b : bytes_) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xf]);
  }
  return out;
}

bool Address::is_zero() const {
  return std::all_of(bytes_.begin(), bytes_.end(), [](std::uint8_t b) { return b == 0; });
}

}  // namespace spectrum

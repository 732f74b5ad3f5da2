#include "spectrum/types.hpp"

#include <charconv>
#include <limits>

#include "spectrum/error.hpp"

namespace spectrum {

FrequencyMhz parse_frequency(const std::string& text) {
  std::string_view digits = text;
  if (digits.size() > 3 && digits.substr(digits.size() - 3) == "MHz") digits.remove_suffix(3);
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (digits.empty() || ec != std::errc{} || ptr != digits.data() + digits.size()) {
    fail(ErrorCode::InvalidArgument, "malformed frequency '" + text + "'");
  }
  return FrequencyMhz{value};
}

Timestamp add_seconds(Timestamp base, Seconds delta) {
  if (delta > std::numeric_limits<Timestamp>::max() - base) fail(ErrorCode::Overflow, "timestamp overflows");
  return base + delta;
}

}  // namespace spectrum

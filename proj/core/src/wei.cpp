#include "spectrum/wei.hpp"

#include <algorithm>
#include <limits>

#include "spectrum/error.hpp"

namespace spectrum {

namespace {

constexpr Wei::Rep kMax = std::numeric_limits<Wei::Rep>::max();

// Accumulates base-10 digits into `acc`, failing on overflow.
bool push_digits(std::string_view digits, Wei::Rep& acc) {
  for (char c : digits) {
    if (c < '0' || c > '9') return false;
    auto d = static_cast<Wei::Rep>(c - '0');
    if (acc > (kMax - d) / 10) return false;
    acc = acc * 10 + d;
  }
  return true;
}

}  // namespace

Wei Wei::parse(std::string_view integer) {
  Rep acc = 0;
  if (integer.empty() || !push_digits(integer, acc)) {
    fail(ErrorCode::InvalidArgument, "malformed wei amount '" + std::string(integer) + "'");
  }
  return Wei(acc);
}

Wei Wei::from_ether(std::string_view decimal) {
  auto bad = [&] { fail(ErrorCode::InvalidArgument, "malformed ether amount '" + std::string(decimal) + "'"); };
  auto dot = decimal.find('.');
  std::string_view whole = decimal.substr(0, dot);
  std::string_view frac = dot == std::string_view::npos ? std::string_view{} : decimal.substr(dot + 1);
  if (whole.empty() && frac.empty()) bad();
  if (dot != std::string_view::npos && frac.empty()) bad();
  if (frac.size() > kEtherDecimals) bad();

  Rep acc = 0;
  if (!push_digits(whole, acc)) bad();
  std::string padded(frac);
  padded.append(kEtherDecimals - frac.size(), '0');
  for (char c : padded) {
    if (c < '0' || c > '9') bad();
    auto d = static_cast<Rep>(c - '0');
    if (acc > (kMax - d) / 10) fail(ErrorCode::Overflow, "ether amount out of range");
    acc = acc * 10 + d;
  }
  return Wei(acc);
}

std::string Wei::to_string() const {
  if (value_ == 0) return "0";
  std::string out;
  for (Rep v = value_; v != 0; v /= 10) out.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
  std::reverse(out.begin(), out.end());
  return out;
}

std::string Wei::to_ether_string() const {
  std::string digits = to_string();
  if (digits.size() <= kEtherDecimals) digits.insert(0, kEtherDecimals + 1 - digits.size(), '0');
  std::string whole = digits.substr(0, digits.size() - kEtherDecimals);
  std::string frac = digits.substr(digits.size() - kEtherDecimals);
  while (frac.size() > 1 && frac.back() == '0') frac.pop_back();
  return whole + "." + frac;
}

Wei Wei::checked_add(Wei other) const {
  if (value_ > kMax - other.value_) fail(ErrorCode::Overflow, "wei addition overflows");
  return Wei(value_ + other.value_);
}

Wei Wei::checked_sub(Wei other) const {
  if (other.value_ > value_) fail(ErrorCode::Overflow, "wei subtraction underflows");
  return Wei(value_ - other.value_);
}

}  // namespace spectrum

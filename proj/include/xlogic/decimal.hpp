#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include "xlogic/error.hpp"

namespace xlogic {

// Finite-precision decimal m * 10^e used for split thresholds and point values
// so that discretization compares exactly what the model file says.
class Decimal {
 public:
  Decimal() = default;
  Decimal(std::int64_t mantissa, int exponent = 0) : mantissa_(mantissa), exponent_(exponent) {
    normalize();
  }

  static Decimal parse(std::string_view text) {
    auto fail = [&] { throw error(errc::invalid_argument, "malformed decimal '" + std::string(text) + "'"); };
    std::size_t pos = 0;
    bool negative = false;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) negative = text[pos++] == '-';
    __int128 mantissa = 0;
    int exponent = 0;
    int digits = 0;
    bool any = false;
    auto push_digit = [&](char c) {
      if (mantissa == 0 && c == '0') return;
      if (digits >= 18) fail();
      mantissa = mantissa * 10 + (c - '0');
      ++digits;
    };
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
      push_digit(text[pos++]);
      any = true;
    }
    if (pos < text.size() && text[pos] == '.') {
      ++pos;
      while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
        push_digit(text[pos++]);
        --exponent;
        any = true;
      }
    }
    if (!any) fail();
    if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
      ++pos;
      bool neg_exp = false;
      if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) neg_exp = text[pos++] == '-';
      int e = 0;
      bool exp_digits = false;
      while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
        e = e * 10 + (text[pos++] - '0');
        exp_digits = true;
        if (e > 400) fail();
      }
      if (!exp_digits) fail();
      exponent += neg_exp ? -e : e;
    }
    if (pos != text.size()) fail();
    return Decimal(static_cast<std::int64_t>(negative ? -mantissa : mantissa), exponent);
  }

  std::int64_t mantissa() const { return mantissa_; }
  int exponent() const { return exponent_; }

  double to_double() const { return std::stod(to_string()); }

  std::string to_string() const {
    if (mantissa_ == 0) return "0";
    std::string digits;
    for (auto v = abs128(mantissa_); v; v /= 10) digits.insert(digits.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
    std::string sign = mantissa_ < 0 ? "-" : "";
    if (exponent_ >= 0) {
      if (exponent_ > 30) return sign + digits + "e" + std::to_string(exponent_);
      return sign + digits + std::string(static_cast<std::size_t>(exponent_), '0');
    }
    auto frac = static_cast<std::size_t>(-exponent_);
    if (frac > 30) return sign + digits + "e" + std::to_string(exponent_);
    if (digits.size() <= frac) digits.insert(0, frac - digits.size() + 1, '0');
    digits.insert(digits.size() - frac, ".");
    return sign + digits;
  }

  friend bool operator==(const Decimal& a, const Decimal& b) {
    return a.mantissa_ == b.mantissa_ && a.exponent_ == b.exponent_;
  }

  friend std::strong_ordering operator<=>(const Decimal& a, const Decimal& b) {
    int sa = sign(a.mantissa_), sb = sign(b.mantissa_);
    if (sa != sb) return sa <=> sb;
    if (sa == 0) return std::strong_ordering::equal;
    // Same sign: compare magnitudes, then flip for negatives.
    auto mag = compare_magnitude(a, b);
    return sa > 0 ? mag : 0 <=> mag;
  }

 private:
  static int sign(std::int64_t v) { return (v > 0) - (v < 0); }

  static int digit_count(unsigned __int128 v) {
    int n = 0;
    while (v) {
      v /= 10;
      ++n;
    }
    return n;
  }

  static unsigned __int128 abs128(std::int64_t v) {
    return v < 0 ? static_cast<unsigned __int128>(-static_cast<__int128>(v)) : static_cast<unsigned __int128>(v);
  }

  static std::strong_ordering compare_magnitude(const Decimal& a, const Decimal& b) {
    unsigned __int128 ma = abs128(a.mantissa_), mb = abs128(b.mantissa_);
    int oa = digit_count(ma) + a.exponent_, ob = digit_count(mb) + b.exponent_;
    if (oa != ob) return oa <=> ob;
    // Same order of magnitude: exponent gap is below 19 digits, so scaling fits.
    return compare_scaled(ma, a.exponent_, mb, b.exponent_);
  }

  static std::strong_ordering compare_scaled(unsigned __int128 ma, int ea, unsigned __int128 mb, int eb) {
    while (ea > eb) {
      ma *= 10;
      --ea;
    }
    while (eb > ea) {
      mb *= 10;
      --eb;
    }
    return ma <=> mb;
  }

  void normalize() {
    if (mantissa_ == 0) {
      exponent_ = 0;
      return;
    }
    while (mantissa_ % 10 == 0) {
      mantissa_ /= 10;
      ++exponent_;
    }
  }

  std::int64_t mantissa_ = 0;
  int exponent_ = 0;
};

}  // namespace xlogic

#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include "fgm/errors.hpp"

namespace fgm {

// Reduced fraction over int64. Intermediate products run through __int128;
// a reduced result that no longer fits int64 throws std::overflow_error, and
// callers holding mixed exact/float data fall back to doubles.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den) { *this = reduce(num, den); }

  // Accepts "p/q", "p", with optional leading '-'.
  static Rational parse(const std::string& text) {
    const auto slash = text.find('/');
    try {
      if (slash == std::string::npos) {
        return Rational(parse_int(text), 1);
      }
      return Rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
    } catch (const std::invalid_argument&) {
      throw ParseError("not a rational: '" + text + "'");
    } catch (const std::out_of_range&) {
      throw ParseError("rational out of range: '" + text + "'");
    }
  }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return reduce128(i128(a.num_) * b.den_ + i128(b.num_) * a.den_, i128(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return reduce128(i128(a.num_) * b.den_ - i128(b.num_) * a.den_, i128(a.den_) * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return reduce128(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const i128 lhs = i128(a.num_) * b.den_;
    const i128 rhs = i128(b.num_) * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  using i128 = __int128;

  static std::int64_t parse_int(const std::string& s) {
    std::size_t used = 0;
    const long long v = std::stoll(s, &used);
    if (used != s.size() || s.empty()) throw std::invalid_argument(s);
    return v;
  }

  static i128 gcd128(i128 a, i128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
      const i128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  static Rational reduce(std::int64_t n, std::int64_t d) { return reduce128(n, d); }

  static Rational reduce128(i128 n, i128 d) {
    if (d == 0) throw Error("rational with zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    const i128 g = n == 0 ? d : gcd128(n, d);
    n /= g;
    d /= g;
    constexpr i128 lo = INT64_MIN, hi = INT64_MAX;
    if (n < lo || n > hi || d > hi) throw std::overflow_error("rational overflow");
    Rational r;
    r.num_ = static_cast<std::int64_t>(n);
    r.den_ = static_cast<std::int64_t>(d);
    return r;
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace fgm

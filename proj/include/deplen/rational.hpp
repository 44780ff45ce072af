#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

namespace deplen {

/// Signed 128-bit integer used for exact sums (sum of distances over up to
/// ~10^9 structures of length 25 does not fit comfortably in 64 bits once
/// squared terms are involved).
using wide_int = __int128;

std::string to_string(wide_int value);

/// Exact rational number with a 128-bit numerator and denominator.
///
/// Always kept in lowest terms with a positive denominator, so structural
/// equality is value equality. Intended for reporting-scale arithmetic
/// (means, proportions, baselines); the operands here never come close to
/// the 128-bit range.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t value) : num_(value), den_(1) {}  // NOLINT
  Rational(wide_int num, wide_int den);

  wide_int num() const { return num_; }
  wide_int den() const { return den_; }

  double to_double() const;

  /// "num/den", always with the slash ("2/1" for two).
  std::string str() const;

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a,
                                          const Rational& b) {
    // den > 0 on both sides, so cross-multiplication preserves the order.
    wide_int lhs = a.num_ * b.den_;
    wide_int rhs = b.num_ * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return {a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_};
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return {a.num_ * b.num_, a.den_ * b.den_};
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("rational division by zero");
    return {a.num_ * b.den_, a.den_ * b.num_};
  }

 private:
  wide_int num_ = 0;
  wide_int den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// Parses "a/b" or "a". Throws std::invalid_argument on malformed text.
Rational parse_rational(const std::string& text);

}  // namespace deplen

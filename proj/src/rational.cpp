#include "deplen/rational.hpp"

#include <algorithm>

namespace deplen {

namespace {

wide_int abs_wide(wide_int v) { return v < 0 ? -v : v; }

wide_int gcd_wide(wide_int a, wide_int b) {
  a = abs_wide(a);
  b = abs_wide(b);
  while (b != 0) {
    wide_int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

wide_int parse_wide(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty integer");
  std::size_t i = 0;
  bool negative = false;
  if (text[0] == '-' || text[0] == '+') {
    negative = text[0] == '-';
    i = 1;
  }
  if (i == text.size()) throw std::invalid_argument("bad integer: " + text);
  wide_int value = 0;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (c < '0' || c > '9') throw std::invalid_argument("bad integer: " + text);
    value = value * 10 + (c - '0');
  }
  return negative ? -value : value;
}

}  // namespace

std::string to_string(wide_int value) {
  if (value == 0) return "0";
  bool negative = value < 0;
  // Magnitude as unsigned so the minimum value is representable.
  unsigned __int128 mag = negative ? static_cast<unsigned __int128>(-(value + 1)) + 1
                                   : static_cast<unsigned __int128>(value);
  std::string out;
  while (mag != 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(mag % 10)));
    mag /= 10;
  }
  if (negative) out.push_back('-');
  std::reverse(out.begin(), out.end());
  return out;
}

Rational::Rational(wide_int num, wide_int den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  wide_int g = gcd_wide(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  num_ = num;
  den_ = den;
}

double Rational::to_double() const {
  return static_cast<double>(num_) / static_cast<double>(den_);
}

std::string Rational::str() const { return to_string(num_) + "/" + to_string(den_); }

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(parse_wide(text), 1);
  return Rational(parse_wide(text.substr(0, slash)), parse_wide(text.substr(slash + 1)));
}

}  // namespace deplen

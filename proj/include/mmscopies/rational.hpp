// SPDX-License-Identifier: MIT
//
// Exact rational arithmetic on 64-bit numerator/denominator pairs.
// Intermediate products are carried in 128-bit integers and results are
// reduced before narrowing back to 64 bits; narrowing that would lose range
// throws OverflowError instead of wrapping. Every comparison is exact, so
// callers can use these values directly in allocation decisions.

#pragma once

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mmscopies {

class OverflowError : public std::runtime_error {
 public:
  explicit OverflowError(const std::string& what) : std::runtime_error(what) {}
};

class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t value) : num_(value), den_(1) {}  // NOLINT: implicit on purpose
  Rational(std::int64_t num, std::int64_t den) { *this = make(num, den); }

  // Accepts "p", "-p", "p/q" with optional surrounding spaces.
  static Rational parse(std::string_view text);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  // "p" when the denominator is 1, otherwise "p/q".
  std::string str() const;

  std::int64_t floor() const;
  std::int64_t ceil() const;
  int sign() const { return (num_ > 0) - (num_ < 0); }
  Rational abs() const { return num_ < 0 ? Rational(-num_, den_) : *this; }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return make(Wide(a.num_) * b.den_ + Wide(b.num_) * a.den_, Wide(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return make(Wide(a.num_) * b.den_ - Wide(b.num_) * a.den_, Wide(a.den_) * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return make(Wide(a.num_) * b.num_, Wide(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
    return make(Wide(a.num_) * b.den_, Wide(a.den_) * b.num_);
  }
  Rational operator-() const {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return Wide(a.num_) * b.den_ < Wide(b.num_) * a.den_;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  using Wide = __int128;

  static Wide wide_gcd(Wide a, Wide b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
      Wide t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  static Rational make(Wide num, Wide den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    if (num == 0) {
      Rational r;
      return r;
    }
    Wide g = wide_gcd(num, den);
    num /= g;
    den /= g;
    constexpr Wide lo = Wide(INT64_MIN), hi = Wide(INT64_MAX);
    if (num < lo || num > hi || den > hi) throw OverflowError("Rational: 64-bit overflow");
    Rational r;
    r.num_ = static_cast<std::int64_t>(num);
    r.den_ = static_cast<std::int64_t>(den);
    return r;
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

inline std::int64_t Rational::floor() const {
  std::int64_t q = num_ / den_;
  if (num_ % den_ != 0 && num_ < 0) --q;
  return q;
}

inline std::int64_t Rational::ceil() const {
  std::int64_t q = num_ / den_;
  if (num_ % den_ != 0 && num_ > 0) ++q;
  return q;
}

inline std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

inline Rational Rational::parse(std::string_view text) {
  auto fail = [&] { throw std::invalid_argument("Rational::parse: bad input '" + std::string(text) + "'"); };
  std::size_t b = 0, e = text.size();
  while (b < e && text[b] == ' ') ++b;
  while (e > b && text[e - 1] == ' ') --e;
  if (b == e) fail();
  std::string_view body = text.substr(b, e - b);
  auto parse_int = [&](std::string_view s) -> std::int64_t {
    if (s.empty()) fail();
    bool neg = false;
    std::size_t i = 0;
    if (s[0] == '+' || s[0] == '-') {
      neg = s[0] == '-';
      i = 1;
      if (s.size() == 1) fail();
    }
    Wide v = 0;
    for (; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') fail();
      v = v * 10 + (s[i] - '0');
      if (v > Wide(INT64_MAX) + 1) fail();
    }
    if (neg) v = -v;
    if (v < Wide(INT64_MIN) || v > Wide(INT64_MAX)) fail();
    return static_cast<std::int64_t>(v);
  };
  std::size_t slash = body.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(body));
  return Rational(parse_int(body.substr(0, slash)), parse_int(body.substr(slash + 1)));
}

}  // namespace mmscopies

#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace mssc {

// Exact rational over int64 with a normalized representation: gcd(num, den) == 1
// and den > 0. Intermediates are computed in 128 bits; a result that does not
// fit back into int64 throws std::overflow_error rather than wrapping.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t value) : num_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(std::int64_t num, std::int64_t den) { assign(num, den); }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_integer() const { return den_ == 1; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  // "num/den", or just "num" for integers.
  std::string str() const;
  static Rational parse(const std::string& text);

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend Rational operator+(const Rational& a, const Rational& b) {
    if (a.den_ == b.den_) return from_wide(__int128{a.num_} + b.num_, a.den_);
    return from_wide(__int128{a.num_} * b.den_ + __int128{b.num_} * a.den_,
                     __int128{a.den_} * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    if (a.den_ == b.den_) return from_wide(__int128{a.num_} - b.num_, a.den_);
    return from_wide(__int128{a.num_} * b.den_ - __int128{b.num_} * a.den_,
                     __int128{a.den_} * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return from_wide(__int128{a.num_} * b.num_, __int128{a.den_} * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
    return from_wide(__int128{a.num_} * b.den_, __int128{a.den_} * b.num_);
  }
  friend Rational operator-(const Rational& a) { return from_wide(-__int128{a.num_}, a.den_); }

  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    return __int128{a.num_} * b.den_ <=> __int128{b.num_} * a.den_;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.str(); }

 private:
  void assign(__int128 num, __int128 den);
  static Rational from_wide(__int128 num, __int128 den) {
    Rational q;
    q.assign(num, den);
    return q;
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace mssc

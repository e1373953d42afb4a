#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace qrap {

using int128 = __int128;

// Exact reduced fraction. den > 0 and gcd(|num|, den) == 1 always hold, so
// equality is plain member comparison. Arithmetic goes through 128-bit
// intermediates and throws std::overflow_error if a reduced result does not
// fit back into 64 bits.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  constexpr Rational() = default;
  constexpr Rational(std::int64_t n) : num(n), den(1) {}  // NOLINT(google-explicit-constructor)
  Rational(std::int64_t n, std::int64_t d) { *this = reduce(n, d); }

  static Rational reduce(int128 n, int128 d);

  bool is_integer() const { return den == 1; }
  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int128 lhs = static_cast<int128>(a.num) * b.den;
    const int128 rhs = static_cast<int128>(b.num) * a.den;
    return lhs < rhs ? std::strong_ordering::less
         : lhs > rhs ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return reduce(static_cast<int128>(a.num) * b.den + static_cast<int128>(b.num) * a.den,
                  static_cast<int128>(a.den) * b.den);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return reduce(static_cast<int128>(a.num) * b.den - static_cast<int128>(b.num) * a.den,
                  static_cast<int128>(a.den) * b.den);
  }
};

inline Rational Rational::reduce(int128 n, int128 d) {
  if (d == 0) throw std::domain_error("Rational: zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  int128 x = n < 0 ? -n : n;
  int128 y = d;
  while (y != 0) {
    const int128 t = x % y;
    x = y;
    y = t;
  }
  if (x > 1) {
    n /= x;
    d /= x;
  }
  constexpr int128 lo = std::numeric_limits<std::int64_t>::min();
  constexpr int128 hi = std::numeric_limits<std::int64_t>::max();
  if (n < lo || n > hi || d > hi) throw std::overflow_error("Rational: value out of 64-bit range");
  Rational r;
  r.num = static_cast<std::int64_t>(n);
  r.den = static_cast<std::int64_t>(d);
  return r;
}

}  // namespace qrap

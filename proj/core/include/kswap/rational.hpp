#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "kswap/exact.hpp"

namespace kswap {

// Small exact rational for generator parameters (phi, bases, alpha).
// Always reduced with a positive denominator; magnitudes are kept below
// 2^62 so cross products fit comfortably in 128 bits.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational make(int128 num, int128 den);
  static Rational integer(std::int64_t v) { return {v, 1}; }

  friend bool operator==(const Rational&, const Rational&) = default;
};

Rational operator+(const Rational& a, const Rational& b);
Rational operator-(const Rational& a, const Rational& b);
Rational operator*(const Rational& a, const Rational& b);
Rational operator/(const Rational& a, const Rational& b);
int compare(const Rational& a, const Rational& b);
inline bool operator<(const Rational& a, const Rational& b) { return compare(a, b) < 0; }
inline bool operator<=(const Rational& a, const Rational& b) { return compare(a, b) <= 0; }
inline bool operator>(const Rational& a, const Rational& b) { return compare(a, b) > 0; }
inline bool operator>=(const Rational& a, const Rational& b) { return compare(a, b) >= 0; }

// Accepts "a/b", integers, and plain decimals such as "0.125" or "1e-3".
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& r);
double to_double(const Rational& r);

// floor(r * 2^shift) for r >= 0, computed exactly.
uint128 floor_scaled(const Rational& r, int shift);

}  // namespace kswap

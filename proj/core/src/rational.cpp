#include "kswap/rational.hpp"

#include <charconv>
#include <numeric>

#include "kswap/error.hpp"

namespace kswap {

namespace {

constexpr int128 kLimit = int128(1) << 62;

int128 gcd128(int128 a, int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    const int128 r = a % b;
    a = b;
    b = r;
  }
  return a;
}

}  // namespace

Rational Rational::make(int128 num, int128 den) {
  if (den == 0) throw Error(ErrorCode::invalid_argument, "rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const int128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (num >= kLimit || -num >= kLimit || den >= kLimit)
    throw Error(ErrorCode::invalid_argument, "rational parameter exceeds 62-bit magnitude");
  return {static_cast<std::int64_t>(num), static_cast<std::int64_t>(den)};
}

Rational operator+(const Rational& a, const Rational& b) {
  return Rational::make(int128(a.num) * b.den + int128(b.num) * a.den, int128(a.den) * b.den);
}

Rational operator-(const Rational& a, const Rational& b) {
  return Rational::make(int128(a.num) * b.den - int128(b.num) * a.den, int128(a.den) * b.den);
}

Rational operator*(const Rational& a, const Rational& b) {
  return Rational::make(int128(a.num) * b.num, int128(a.den) * b.den);
}

Rational operator/(const Rational& a, const Rational& b) {
  return Rational::make(int128(a.num) * b.den, int128(a.den) * b.num);
}

int compare(const Rational& a, const Rational& b) {
  const int128 lhs = int128(a.num) * b.den;
  const int128 rhs = int128(b.num) * a.den;
  return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

Rational parse_rational(std::string_view text) {
  const auto fail = [&] {
    return Error(ErrorCode::invalid_argument, "cannot parse rational '" + std::string(text) + "'");
  };
  if (text.empty()) throw fail();
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const Rational n = parse_rational(text.substr(0, slash));
    const Rational d = parse_rational(text.substr(slash + 1));
    if (d.num == 0) throw fail();
    return n / d;
  }
  std::size_t pos = 0;
  bool negative = false;
  if (text[pos] == '+' || text[pos] == '-') negative = text[pos++] == '-';
  int128 num = 0;
  int fraction_digits = 0;
  bool seen_digit = false;
  bool seen_point = false;
  for (; pos < text.size(); ++pos) {
    const char ch = text[pos];
    if (ch == '.' && !seen_point) {
      seen_point = true;
    } else if (ch >= '0' && ch <= '9') {
      seen_digit = true;
      num = num * 10 + (ch - '0');
      if (seen_point) ++fraction_digits;
      if (num >= (int128(1) << 100)) throw fail();
    } else {
      break;
    }
  }
  if (!seen_digit) throw fail();
  int exponent = 0;
  if (pos < text.size()) {
    if (text[pos] != 'e' && text[pos] != 'E') throw fail();
    ++pos;
    if (pos < text.size() && text[pos] == '+') ++pos;
    const auto* first = text.data() + pos;
    const auto* last = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, exponent);
    if (ec != std::errc() || ptr != last) throw fail();
  }
  exponent -= fraction_digits;
  if (exponent > 30 || exponent < -30) throw fail();
  int128 den = 1;
  for (; exponent > 0; --exponent) num *= 10;
  for (; exponent < 0; ++exponent) den *= 10;
  return Rational::make(negative ? -num : num, den);
}

std::string to_string(const Rational& r) {
  if (r.den == 1) return std::to_string(r.num);
  return std::to_string(r.num) + "/" + std::to_string(r.den);
}

double to_double(const Rational& r) {
  return static_cast<double>(static_cast<long double>(r.num) / static_cast<long double>(r.den));
}

uint128 floor_scaled(const Rational& r, int shift) {
  if (r.num < 0) throw Error(ErrorCode::invalid_argument, "floor_scaled needs a non-negative value");
  if (shift < 0 || shift > kMaxScaleLog2) throw Error(ErrorCode::invalid_argument, "shift out of range");
  const auto den = static_cast<uint128>(r.den);
  uint128 quotient = static_cast<uint128>(r.num) / den;
  uint128 remainder = static_cast<uint128>(r.num) % den;
  if (quotient >= (uint128(1) << 30))
    throw Error(ErrorCode::invalid_argument, "value too large to scale");
  // Binary long division, one fraction bit at a time.
  for (int i = 0; i < shift; ++i) {
    remainder <<= 1;
    quotient <<= 1;
    if (remainder >= den) {
      remainder -= den;
      quotient |= 1;
    }
  }
  return quotient;
}

}  // namespace kswap

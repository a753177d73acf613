#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace kswap {

using int128 = __int128;
using uint128 = unsigned __int128;

// Largest supported grid exponent. Every load and potential of an
// instance with n jobs on m machines stays below 8*m*n*2^scale_log2, and
// instance validation keeps that product below 2^125.
inline constexpr int kMaxScaleLog2 = 96;

/// A value numerator / 2^scale_log2 on the grid shared by one instance.
///
/// The scale is not stored: every processing time, load, difference and
/// potential of an instance lives on the same grid, so comparisons and sums
/// are plain integer operations. Formatting needs the scale passed back in.
class Exact {
public:
  constexpr Exact() = default;
  constexpr explicit Exact(int128 units) : units_(units) {}

  constexpr int128 units() const { return units_; }

  constexpr Exact& operator+=(Exact o) { units_ += o.units_; return *this; }
  constexpr Exact& operator-=(Exact o) { units_ -= o.units_; return *this; }

  friend constexpr Exact operator+(Exact a, Exact b) { return Exact(a.units_ + b.units_); }
  friend constexpr Exact operator-(Exact a, Exact b) { return Exact(a.units_ - b.units_); }
  friend constexpr Exact operator-(Exact a) { return Exact(-a.units_); }
  friend constexpr Exact operator*(int128 s, Exact a) { return Exact(s * a.units_); }
  friend constexpr Exact operator*(Exact a, int128 s) { return Exact(s * a.units_); }

  friend constexpr bool operator==(Exact a, Exact b) { return a.units_ == b.units_; }
  friend constexpr std::strong_ordering operator<=>(Exact a, Exact b) {
    if (a.units_ < b.units_) return std::strong_ordering::less;
    if (a.units_ > b.units_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

private:
  int128 units_ = 0;
};

constexpr Exact abs(Exact v) { return v.units() < 0 ? -v : v; }

std::string int128_to_string(int128 v);
int128 parse_int128(std::string_view text);

// "numerator/2^scale_log2", the machine-readable form used in traces.
std::string format_exact(Exact v, int scale_log2);
// Accepts the form written by format_exact; the exponent must match.
Exact parse_exact(std::string_view text, int scale_log2);

// Reduced fraction, e.g. "1/8", "3", "0".
std::string format_reduced(Exact v, int scale_log2);

double to_double(Exact v, int scale_log2);

}  // namespace kswap

#include "kswap/exact.hpp"

#include <algorithm>
#include <cmath>

#include "kswap/error.hpp"

namespace kswap {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid-argument";
    case ErrorCode::malformed_document: return "malformed-document";
    case ErrorCode::non_positive_time: return "non-positive-processing-time";
    case ErrorCode::inconsistent_scale: return "inconsistent-scale";
    case ErrorCode::base_out_of_range: return "base-out-of-range";
    case ErrorCode::invalid_move: return "invalid-move";
    case ErrorCode::budget_exceeded: return "budget-exceeded";
    case ErrorCode::zero_delta: return "zero-delta";
    case ErrorCode::iteration_limit: return "iteration-limit-exceeded";
    case ErrorCode::wrong_k: return "wrong-k";
    case ErrorCode::empty_input: return "empty-input";
  }
  return "unknown";
}

std::string int128_to_string(int128 v) {
  if (v == 0) return "0";
  const bool negative = v < 0;
  // Work on the magnitude as unsigned so INT128_MIN does not overflow.
  uint128 mag = negative ? uint128(0) - static_cast<uint128>(v) : static_cast<uint128>(v);
  std::string out;
  while (mag != 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(mag % 10)));
    mag /= 10;
  }
  if (negative) out.push_back('-');
  std::reverse(out.begin(), out.end());
  return out;
}

int128 parse_int128(std::string_view text) {
  if (text.empty()) throw Error(ErrorCode::malformed_document, "empty integer");
  bool negative = false;
  std::size_t pos = 0;
  if (text[0] == '-' || text[0] == '+') {
    negative = text[0] == '-';
    pos = 1;
  }
  if (pos == text.size()) throw Error(ErrorCode::malformed_document, "bad integer '" + std::string(text) + "'");
  constexpr uint128 limit = (uint128(1) << 126);
  uint128 mag = 0;
  for (; pos < text.size(); ++pos) {
    const char ch = text[pos];
    if (ch < '0' || ch > '9')
      throw Error(ErrorCode::malformed_document, "bad integer '" + std::string(text) + "'");
    mag = mag * 10 + static_cast<uint128>(ch - '0');
    if (mag >= limit) throw Error(ErrorCode::malformed_document, "integer too large '" + std::string(text) + "'");
  }
  const auto v = static_cast<int128>(mag);
  return negative ? -v : v;
}

std::string format_exact(Exact v, int scale_log2) {
  return int128_to_string(v.units()) + "/2^" + std::to_string(scale_log2);
}

Exact parse_exact(std::string_view text, int scale_log2) {
  const auto slash = text.find("/2^");
  if (slash == std::string_view::npos)
    throw Error(ErrorCode::malformed_document, "exact value must look like 'n/2^s': '" + std::string(text) + "'");
  const int128 exponent = parse_int128(text.substr(slash + 3));
  if (exponent != scale_log2)
    throw Error(ErrorCode::inconsistent_scale, "value '" + std::string(text) + "' is not on the 2^" +
                                                   std::to_string(scale_log2) + " grid");
  return Exact(parse_int128(text.substr(0, slash)));
}

std::string format_reduced(Exact v, int scale_log2) {
  int128 num = v.units();
  int exponent = scale_log2;
  if (num == 0) return "0";
  while (exponent > 0 && (num & 1) == 0) {
    num >>= 1;
    --exponent;
  }
  if (exponent == 0) return int128_to_string(num);
  return int128_to_string(num) + "/" + int128_to_string(int128(1) << exponent);
}

double to_double(Exact v, int scale_log2) {
  return std::ldexp(static_cast<long double>(v.units()), -scale_log2);
}

}  // namespace kswap

#include "kswap/random.hpp"

#include <bit>

#include "kswap/error.hpp"

namespace kswap {

uint128 Rng::below(uint128 range) {
  if (range == 0) throw Error(ErrorCode::invalid_argument, "empty sampling range");
  if (range == 1) return 0;
  const uint128 top = range - 1;
  const auto hi = static_cast<std::uint64_t>(top >> 64);
  const int bits = hi != 0 ? 64 + std::bit_width(hi) : std::bit_width(static_cast<std::uint64_t>(top));
  const uint128 mask = bits == 128 ? ~uint128(0) : (uint128(1) << bits) - 1;
  // Rejection on the smallest covering power of two: fewer than two draws on
  // average, and the result depends only on the engine output.
  for (;;) {
    uint128 x = engine_();
    if (bits > 64) x |= uint128(engine_()) << 64;
    x &= mask;
    if (x < range) return x;
  }
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b) {
  return splitmix64(splitmix64(splitmix64(master) ^ a) ^ (b * 0xd1b54a32d192ed03ULL));
}

}  // namespace kswap

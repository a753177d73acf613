#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "kswap/exact.hpp"

namespace kswap {

// Seeded generator with a portable output sequence. std::mt19937_64 is fully
// specified by the standard; the distributions layered on top are written
// out here because the standard library's are implementation-defined.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform on {0, ..., range - 1}; range must be positive.
  uint128 below(uint128 range);
  std::size_t index_below(std::size_t range) {
    return static_cast<std::size_t>(below(range));
  }

private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

// Counter-mode derivation: the result depends only on the arguments.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0);

}  // namespace kswap

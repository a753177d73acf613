#pragma once

// Test-only references. These deliberately avoid the library's enumeration
// and load code: loads are summed from scratch and subsets are bitmasks.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "kswap/instance.hpp"

namespace brute {

using kswap::Exact;
using kswap::Instance;

inline std::vector<Exact> loads_of(const Instance& inst, const std::vector<int>& assignment) {
  std::vector<Exact> loads(static_cast<std::size_t>(inst.machines));
  for (std::size_t j = 0; j < assignment.size(); ++j)
    loads[static_cast<std::size_t>(assignment[j])] += inst.jobs[j];
  return loads;
}

// Sum over ordered pairs, O(m^2).
inline Exact phi_direct(const std::vector<Exact>& loads) {
  Exact total;
  for (const Exact a : loads)
    for (const Exact b : loads) total += a > b ? a - b : b - a;
  return total;
}

struct RawMove {
  int source;
  int target;
  std::uint32_t a_mask;  // bits index into the source machine's job list
  std::uint32_t b_mask;
  std::vector<int> a;
  std::vector<int> b;
  Exact gain;
};

// Every structurally valid move with a critical source.
inline std::vector<RawMove> all_moves(const Instance& inst, const std::vector<int>& assignment, int k) {
  const auto loads = loads_of(inst, assignment);
  const Exact lmax = *std::max_element(loads.begin(), loads.end());
  std::vector<std::vector<int>> on(static_cast<std::size_t>(inst.machines));
  for (std::size_t j = 0; j < assignment.size(); ++j)
    on[static_cast<std::size_t>(assignment[j])].push_back(static_cast<int>(j));
  std::vector<RawMove> out;
  for (int i = 0; i < inst.machines; ++i) {
    if (loads[static_cast<std::size_t>(i)] != lmax) continue;
    const auto& mi = on[static_cast<std::size_t>(i)];
    for (int ip = 0; ip < inst.machines; ++ip) {
      if (ip == i) continue;
      const auto& mip = on[static_cast<std::size_t>(ip)];
      for (std::uint32_t am = 1; am < (1u << mi.size()); ++am) {
        const int sa = std::popcount(am);
        if (sa > k) continue;
        for (std::uint32_t bm = 0; bm < (1u << mip.size()); ++bm) {
          if (sa + std::popcount(bm) > k) continue;
          RawMove mv{i, ip, am, bm, {}, {}, Exact()};
          for (std::size_t x = 0; x < mi.size(); ++x)
            if (am >> x & 1u) { mv.a.push_back(mi[x]); mv.gain += inst.jobs[static_cast<std::size_t>(mi[x])]; }
          for (std::size_t x = 0; x < mip.size(); ++x)
            if (bm >> x & 1u) { mv.b.push_back(mip[x]); mv.gain -= inst.jobs[static_cast<std::size_t>(mip[x])]; }
          out.push_back(std::move(mv));
        }
      }
    }
  }
  return out;
}

inline bool improves(const std::vector<Exact>& loads, const RawMove& mv) {
  const Exact gap = loads[static_cast<std::size_t>(mv.source)] - loads[static_cast<std::size_t>(mv.target)];
  return Exact() < mv.gain && mv.gain < gap;
}

inline std::vector<RawMove> improving_moves(const Instance& inst, const std::vector<int>& assignment, int k) {
  const auto loads = loads_of(inst, assignment);
  std::vector<RawMove> out;
  for (auto& mv : all_moves(inst, assignment, k))
    if (improves(loads, mv)) out.push_back(std::move(mv));
  return out;
}

// Full m^n odometer, no pruning.
inline Exact global_opt_exhaustive(const Instance& inst) {
  const std::size_t n = inst.jobs.size();
  std::vector<int> a(n, 0);
  std::optional<Exact> best;
  while (true) {
    const auto loads = loads_of(inst, a);
    const Exact ms = *std::max_element(loads.begin(), loads.end());
    if (!best || ms < *best) best = ms;
    std::size_t pos = 0;
    while (pos < n && ++a[pos] == inst.machines) a[pos++] = 0;
    if (pos == n) break;
  }
  return *best;
}

// Number of (A, B) with A non-empty from a machine holding `s` jobs and B from
// one holding `t` jobs, |A| + |B| <= k.
inline std::uint64_t pair_count(int s, int t, int k) {
  auto binom = [](int nn, int r) -> std::uint64_t {
    if (r < 0 || r > nn) return 0;
    std::uint64_t c = 1;
    for (int x = 1; x <= r; ++x) c = c * static_cast<std::uint64_t>(nn - r + x) / static_cast<std::uint64_t>(x);
    return c;
  };
  std::uint64_t total = 0;
  for (int x = 1; x <= std::min(s, k); ++x)
    for (int y = 0; y <= std::min(t, k - x); ++y) total += binom(s, x) * binom(t, y);
  return total;
}

}  // namespace brute

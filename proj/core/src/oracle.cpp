#include "kswap/oracle.hpp"

#include <algorithm>
#include <bit>
#include <functional>

#include "kswap/error.hpp"

namespace kswap::oracle {

LocalOptResult verify_local_opt(const Instance& instance, std::span<const MachineId> assignment, int k,
                                std::uint64_t budget) {
  if (k < 1) throw Error(ErrorCode::invalid_argument, "k must be at least 1");
  const int m = instance.machines;
  if (static_cast<int>(assignment.size()) != instance.job_count())
    throw Error(ErrorCode::invalid_argument, "assignment length does not match job count");

  std::vector<std::vector<JobId>> members(static_cast<std::size_t>(m));
  std::vector<int128> load(static_cast<std::size_t>(m), 0);
  for (std::size_t j = 0; j < assignment.size(); ++j) {
    const MachineId i = assignment[j];
    if (i < 0 || i >= m) throw Error(ErrorCode::invalid_argument, "assignment names a machine outside [0, m)");
    members[static_cast<std::size_t>(i)].push_back(static_cast<JobId>(j));
    load[static_cast<std::size_t>(i)] += instance.jobs[j].units();
  }
  const int128 top = *std::max_element(load.begin(), load.end());

  // Up-front work estimate so an over-budget call fails before searching.
  std::uint64_t work = 0;
  for (int i = 0; i < m; ++i) {
    if (load[static_cast<std::size_t>(i)] != top) continue;
    for (int ip = 0; ip < m; ++ip) {
      if (ip == i) continue;
      const auto bits = members[static_cast<std::size_t>(i)].size() + members[static_cast<std::size_t>(ip)].size();
      if (bits >= 63 || (std::uint64_t(1) << bits) > budget - std::min(budget, work))
        throw Error(ErrorCode::budget_exceeded, "local optimality check exceeds the work budget");
      work += std::uint64_t(1) << bits;
    }
  }

  LocalOptResult result;
  for (int i = 0; i < m; ++i) {
    if (load[static_cast<std::size_t>(i)] != top) continue;
    const auto& src = members[static_cast<std::size_t>(i)];
    for (int ip = 0; ip < m; ++ip) {
      if (ip == i) continue;
      const auto& dst = members[static_cast<std::size_t>(ip)];
      const int128 room = load[static_cast<std::size_t>(i)] - load[static_cast<std::size_t>(ip)];
      for (std::uint64_t a = 1; a < (std::uint64_t(1) << src.size()); ++a) {
        const int na = std::popcount(a);
        if (na > k) continue;
        int128 pa = 0;
        for (std::size_t e = 0; e < src.size(); ++e)
          if (a >> e & 1) pa += instance.jobs[static_cast<std::size_t>(src[e])].units();
        for (std::uint64_t b = 0; b < (std::uint64_t(1) << dst.size()); ++b) {
          if (na + std::popcount(b) > k) continue;
          ++result.moves_examined;
          int128 pb = 0;
          for (std::size_t e = 0; e < dst.size(); ++e)
            if (b >> e & 1) pb += instance.jobs[static_cast<std::size_t>(dst[e])].units();
          const int128 g = pa - pb;
          if (g > 0 && g < room) {
            Move move{i, ip, {}, {}};
            for (std::size_t e = 0; e < src.size(); ++e)
              if (a >> e & 1) move.from_source.push_back(src[e]);
            for (std::size_t e = 0; e < dst.size(); ++e)
              if (b >> e & 1) move.from_target.push_back(dst[e]);
            result.locally_optimal = false;
            result.counterexample = std::move(move);
            return result;
          }
        }
      }
    }
  }
  return result;
}

Exact global_opt(const Instance& instance, std::uint64_t node_budget) {
  const int m = instance.machines;
  std::vector<int128> p;
  for (const auto v : instance.jobs) p.push_back(v.units());
  std::sort(p.begin(), p.end(), std::greater<>());

  int128 total = 0;
  for (const auto v : p) total += v;
  const int128 lower = std::max(p.front(), (total + m - 1) / m);

  // Greedy upper bound: each job onto the lightest machine.
  std::vector<int128> load(static_cast<std::size_t>(m), 0);
  for (const auto v : p) *std::min_element(load.begin(), load.end()) += v;
  int128 best = *std::max_element(load.begin(), load.end());
  if (best == lower) return Exact(best);

  std::fill(load.begin(), load.end(), 0);
  std::uint64_t nodes = 0;
  std::function<bool(std::size_t)> descend = [&](std::size_t idx) -> bool {
    if (idx == p.size()) {
      best = *std::max_element(load.begin(), load.end());
      return best == lower;
    }
    for (int i = 0; i < m; ++i) {
      auto& li = load[static_cast<std::size_t>(i)];
      if (li + p[idx] >= best) continue;
      // Machines with equal load are interchangeable; try only the first.
      bool duplicate = false;
      for (int e = 0; e < i && !duplicate; ++e) duplicate = load[static_cast<std::size_t>(e)] == li;
      if (duplicate) continue;
      if (++nodes > node_budget) throw Error(ErrorCode::budget_exceeded, "global_opt exceeds the node budget");
      li += p[idx];
      const bool done = descend(idx + 1);
      li -= p[idx];
      if (done) return true;
    }
    return false;
  };
  descend(0);
  return Exact(best);
}

Exact delta_min_reference(const Instance& instance, int k, std::uint64_t budget) {
  if (k < 1) throw Error(ErrorCode::invalid_argument, "k must be at least 1");
  const auto n = static_cast<std::size_t>(instance.job_count());
  std::uint64_t vectors = 1;
  for (std::size_t j = 0; j < n; ++j) {
    if (vectors > budget / 3) throw Error(ErrorCode::budget_exceeded, "3^n labellings exceed the work budget");
    vectors *= 3;
  }

  // Odometer over labels 0 = neither, 1 = A, 2 = B with running difference
  // p(A) - p(B) and running |A| + |B|.
  std::vector<unsigned char> label(n, 0);
  int128 diff = 0;
  int used = 0;
  bool have = false;
  int128 best = 0;
  for (;;) {
    std::size_t pos = 0;
    while (pos < n && label[pos] == 2) {
      label[pos] = 0;
      diff += instance.jobs[pos].units();
      --used;
      ++pos;
    }
    if (pos == n) break;
    if (label[pos] == 0) {
      label[pos] = 1;
      diff += instance.jobs[pos].units();
      ++used;
    } else {
      label[pos] = 2;
      diff -= 2 * instance.jobs[pos].units();
    }
    if (used >= 1 && used <= k) {
      const int128 v = diff < 0 ? -diff : diff;
      if (!have || v < best) {
        best = v;
        have = true;
      }
    }
  }
  if (best == 0) throw Error(ErrorCode::zero_delta, "two disjoint job sets have equal total processing time");
  return Exact(best);
}

}  // namespace kswap::oracle

#include "kswap/neighborhood.hpp"

#include <algorithm>

#include <json.hpp>

#include "kswap/error.hpp"

namespace kswap {

Exact gain(const Instance& instance, const Move& move) {
  Exact g;
  for (const JobId j : move.from_source) g += instance.p(j);
  for (const JobId j : move.from_target) g -= instance.p(j);
  return g;
}

// After the move A sits on the target and B on the source; send them back.
Move reversed(const Move& move) {
  return {move.target, move.source, move.from_source, move.from_target};
}

void check_structure(const Schedule& schedule, const Move& move, int k) {
  const int m = schedule.machines();
  const auto fail = [](const std::string& why) { return Error(ErrorCode::invalid_move, why); };
  if (move.source < 0 || move.source >= m || move.target < 0 || move.target >= m)
    throw fail("machine index out of range");
  if (move.source == move.target) throw fail("source and target coincide");
  if (move.from_source.empty()) throw fail("A must contain at least one job");
  if (move.size() > k) throw fail("|A| + |B| exceeds k = " + std::to_string(k));
  const auto on = [&](const std::vector<JobId>& jobs, MachineId i) {
    for (const JobId j : jobs) {
      if (j < 0 || j >= schedule.instance().job_count()) throw fail("job index out of range");
      if (schedule.machine_of(j) != i)
        throw fail("job " + std::to_string(j) + " is not on machine " + std::to_string(i));
    }
    if (std::adjacent_find(jobs.begin(), jobs.end()) != jobs.end() || !std::is_sorted(jobs.begin(), jobs.end()))
      throw fail("job sets must be strictly ascending");
  };
  on(move.from_source, move.source);
  on(move.from_target, move.target);
}

namespace {

bool improving_unchecked(const Schedule& schedule, const Move& move, Exact makespan) {
  const Exact source_load = schedule.load(move.source);
  if (source_load != makespan) return false;
  const Exact g = gain(schedule.instance(), move);
  return Exact(0) < g && g < source_load - schedule.load(move.target);
}

Exact makespan_of(const Schedule& schedule) {
  const auto loads = schedule.loads();
  return *std::max_element(loads.begin(), loads.end());
}

// All size-r subsets of items, each ascending, in lexicographic order.
void combinations(const std::vector<JobId>& items, int r, std::vector<std::vector<JobId>>& out) {
  out.clear();
  const int n = static_cast<int>(items.size());
  if (r > n) return;
  std::vector<int> idx(static_cast<std::size_t>(r));
  for (int i = 0; i < r; ++i) idx[static_cast<std::size_t>(i)] = i;
  for (;;) {
    std::vector<JobId> combo;
    combo.reserve(static_cast<std::size_t>(r));
    for (const int i : idx) combo.push_back(items[static_cast<std::size_t>(i)]);
    out.push_back(std::move(combo));
    int pos = r - 1;
    while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == n - r + pos) --pos;
    if (pos < 0) return;
    ++idx[static_cast<std::size_t>(pos)];
    for (int i = pos + 1; i < r; ++i) idx[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i - 1)] + 1;
  }
}

}  // namespace

bool is_improving(const Schedule& schedule, const Move& move, int k) {
  check_structure(schedule, move, k);
  return improving_unchecked(schedule, move, makespan_of(schedule));
}

void for_each_move(const Schedule& schedule, int k, const std::function<bool(const Move&)>& visit) {
  if (k < 1) throw Error(ErrorCode::invalid_argument, "k must be at least 1");
  const int m = schedule.machines();
  const Exact makespan = makespan_of(schedule);
  std::vector<std::vector<JobId>> on(static_cast<std::size_t>(m));
  for (MachineId i = 0; i < m; ++i) on[static_cast<std::size_t>(i)] = schedule.jobs_on(i);

  std::vector<std::vector<JobId>> left;
  std::vector<std::vector<JobId>> right;
  std::vector<std::pair<std::vector<JobId>, std::vector<JobId>>> block;
  for (MachineId source = 0; source < m; ++source) {
    if (schedule.load(source) != makespan) continue;
    const auto& s_jobs = on[static_cast<std::size_t>(source)];
    for (MachineId target = 0; target < m; ++target) {
      if (target == source) continue;
      const auto& t_jobs = on[static_cast<std::size_t>(target)];
      for (int size = 1; size <= k; ++size) {
        block.clear();
        for (int a = 1; a <= size; ++a) {
          const int b = size - a;
          if (a > static_cast<int>(s_jobs.size()) || b > static_cast<int>(t_jobs.size())) continue;
          combinations(s_jobs, a, left);
          combinations(t_jobs, b, right);
          for (const auto& x : left)
            for (const auto& y : right) block.emplace_back(x, y);
        }
        std::sort(block.begin(), block.end());
        for (auto& [a_set, b_set] : block) {
          const Move move{source, target, std::move(a_set), std::move(b_set)};
          if (!visit(move)) return;
        }
      }
    }
  }
}

std::vector<Move> enumerate_moves(const Schedule& schedule, int k) {
  std::vector<Move> out;
  for_each_move(schedule, k, [&](const Move& move) {
    out.push_back(move);
    return true;
  });
  return out;
}

PivotKind parse_pivot_kind(std::string_view text) {
  if (text == "first") return PivotKind::first;
  if (text == "best") return PivotKind::best;
  if (text == "random") return PivotKind::random;
  throw Error(ErrorCode::invalid_argument, "unknown pivot '" + std::string(text) + "'");
}

std::string_view to_string(PivotKind kind) {
  switch (kind) {
    case PivotKind::first: return "first";
    case PivotKind::best: return "best";
    case PivotKind::random: return "random";
  }
  return "unknown";
}

std::optional<Move> find_improving(const Schedule& schedule, int k, PivotKind kind, Rng& rng) {
  const Exact makespan = makespan_of(schedule);
  std::optional<Move> chosen;
  Exact best_gain;
  std::uint64_t seen = 0;
  for_each_move(schedule, k, [&](const Move& move) {
    if (!improving_unchecked(schedule, move, makespan)) return true;
    switch (kind) {
      case PivotKind::first:
        chosen = move;
        return false;
      case PivotKind::best: {
        const Exact g = gain(schedule.instance(), move);
        if (!chosen || g > best_gain) {
          chosen = move;
          best_gain = g;
        }
        return true;
      }
      case PivotKind::random:
        // Reservoir sampling keeps the choice uniform in one pass.
        ++seen;
        if (rng.below(seen) == 0) chosen = move;
        return true;
    }
    return true;
  });
  return chosen;
}

std::optional<Move> find_improving(const Schedule& schedule, int k, const PivotRule& pivot) {
  Rng rng(pivot.seed);
  return find_improving(schedule, k, pivot.kind, rng);
}

void apply_move_in_place(Schedule& schedule, const Move& move) {
  check_structure(schedule, move, move.size());
  for (const JobId j : move.from_source) schedule.reassign(j, move.target);
  for (const JobId j : move.from_target) schedule.reassign(j, move.source);
}

Schedule apply_move(Schedule schedule, const Move& move) {
  apply_move_in_place(schedule, move);
  return schedule;
}

std::uint64_t delta_min_work(int n, int k) {
  uint128 total = 0;
  uint128 binom = 1;  // C(n, s)
  for (int s = 1; s <= std::min(n, k); ++s) {
    binom = binom * static_cast<uint128>(n - s + 1) / static_cast<uint128>(s);
    if (s > 64 || binom > UINT64_MAX) return UINT64_MAX;
    total += binom << (s - 1);
    if (total > UINT64_MAX) return UINT64_MAX;
  }
  return static_cast<std::uint64_t>(total);
}

DeltaMin compute_delta_min(const Instance& instance, int k, std::uint64_t budget) {
  if (k < 1) throw Error(ErrorCode::invalid_argument, "k must be at least 1");
  const int n = instance.job_count();
  const std::uint64_t work = delta_min_work(n, k);
  if (work > budget)
    throw Error(ErrorCode::budget_exceeded, "delta_min needs " + std::to_string(work) +
                                                " candidates, budget " + std::to_string(budget));
  DeltaMin best;
  bool have = false;
  std::vector<JobId> chosen;
  // Subsets S in order of size, then lexicographically; each S is split into
  // A and B with its lowest element pinned to A, which enumerates every
  // unordered {A, B} exactly once.
  std::vector<JobId> all(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) all[static_cast<std::size_t>(j)] = j;
  std::vector<std::vector<JobId>> subsets;
  for (int s = 1; s <= std::min(n, k); ++s) {
    combinations(all, s, subsets);
    for (const auto& subset : subsets) {
      const std::uint64_t splits = std::uint64_t(1) << (s - 1);
      for (std::uint64_t mask = 0; mask < splits; ++mask) {
        Exact diff = instance.p(subset[0]);
        for (int e = 1; e < s; ++e) {
          const Exact p = instance.p(subset[static_cast<std::size_t>(e)]);
          if (mask >> (e - 1) & 1) diff -= p;
          else diff += p;
        }
        const Exact value = abs(diff);
        if (!have || value < best.value) {
          have = true;
          best.value = value;
          best.a.clear();
          best.b.clear();
          best.a.push_back(subset[0]);
          for (int e = 1; e < s; ++e)
            ((mask >> (e - 1) & 1) ? best.b : best.a).push_back(subset[static_cast<std::size_t>(e)]);
        }
      }
    }
  }
  return best;
}

DeltaMin delta_min(const Instance& instance, int k, std::uint64_t budget) {
  DeltaMin result = compute_delta_min(instance, k, budget);
  if (result.is_zero())
    throw Error(ErrorCode::zero_delta, "two disjoint job sets have equal total processing time");
  return result;
}

std::string write_move(const Move& move) {
  nlohmann::ordered_json doc = {{"i", move.source}, {"ip", move.target}, {"A", move.from_source}, {"B", move.from_target}};
  return doc.dump();
}

Move parse_move(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
    return {doc.at("i").get<MachineId>(), doc.at("ip").get<MachineId>(), doc.at("A").get<std::vector<JobId>>(),
            doc.at("B").get<std::vector<JobId>>()};
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::malformed_document, std::string("bad move: ") + e.what());
  }
}

}  // namespace kswap

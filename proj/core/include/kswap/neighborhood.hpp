#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kswap/random.hpp"
#include "kswap/schedule.hpp"

namespace kswap {

/// Exchange of job set A (from_source, on the source machine) with job set B
/// (from_target, on the target machine). B empty is a jump.
struct Move {
  MachineId source = 0;
  MachineId target = 0;
  std::vector<JobId> from_source;  // A, ascending, non-empty
  std::vector<JobId> from_target;  // B, ascending, may be empty

  bool is_jump() const { return from_target.empty(); }
  int size() const { return static_cast<int>(from_source.size() + from_target.size()); }

  friend bool operator==(const Move&, const Move&) = default;
};

// p(A) - p(B).
Exact gain(const Instance& instance, const Move& move);

Move reversed(const Move& move);

// Throws ErrorCode::invalid_move unless source != target, 1 <= |A|,
// |A| + |B| <= k, A lies on the source and B on the target.
void check_structure(const Schedule& schedule, const Move& move, int k);

// Source critical and 0 < p(A) - p(B) < L_source - L_target, all strict.
bool is_improving(const Schedule& schedule, const Move& move, int k);

/// Visits every structurally valid move whose source is critical, in the
/// canonical order (source, target, |A| + |B|, A lexicographic, B
/// lexicographic). The visitor returns false to stop early.
void for_each_move(const Schedule& schedule, int k, const std::function<bool(const Move&)>& visit);

std::vector<Move> enumerate_moves(const Schedule& schedule, int k);

enum class PivotKind { first, best, random };

struct PivotRule {
  PivotKind kind = PivotKind::first;
  std::uint64_t seed = 0;
};

PivotKind parse_pivot_kind(std::string_view text);
std::string_view to_string(PivotKind kind);

// Returns an improving move chosen by the pivot rule, or nothing when the
// schedule is k-swap optimal. The random rule draws from rng.
std::optional<Move> find_improving(const Schedule& schedule, int k, PivotKind kind, Rng& rng);

// Self-contained form: a random pivot draws from Rng(pivot.seed).
std::optional<Move> find_improving(const Schedule& schedule, int k, const PivotRule& pivot);

void apply_move_in_place(Schedule& schedule, const Move& move);
Schedule apply_move(Schedule schedule, const Move& move);

/// Minimum of |p(A) - p(B)| over disjoint job sets with 1 <= |A| + |B| <= k.
/// The witness puts the lowest-index job of A u B into A.
struct DeltaMin {
  Exact value;
  std::vector<JobId> a;
  std::vector<JobId> b;

  bool is_zero() const { return value.units() == 0; }
};

inline constexpr std::uint64_t kDefaultWorkBudget = 50'000'000;

// Number of (A, B) candidates examined: sum over s <= k of C(n, s) * 2^(s-1).
std::uint64_t delta_min_work(int n, int k);

// Exact minimum; may return zero. Throws budget_exceeded.
DeltaMin compute_delta_min(const Instance& instance, int k, std::uint64_t budget = kDefaultWorkBudget);

// As compute_delta_min, but a zero minimum throws ErrorCode::zero_delta.
DeltaMin delta_min(const Instance& instance, int k, std::uint64_t budget = kDefaultWorkBudget);

// {"i": int, "ip": int, "A": [int], "B": [int]}
std::string write_move(const Move& move);
Move parse_move(std::string_view text);

}  // namespace kswap

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "kswap/search.hpp"
#include "kswap/trace.hpp"

namespace kswap {

// Sum over ordered machine pairs of |L_i - L_i'|.
Exact potential_phi(std::span<const Exact> loads);

// |a - c| + |b + c| <= |a| + |b| for 0 < c < a - b. Throws invalid_argument
// when the precondition fails.
bool abs_swap_inequality(int128 a, int128 b, int128 c);

enum class AbsSwapCase {
  both_non_negative,  // a > b >= 0, equality
  both_negative,      // b < a < 0, equality
  c_ge_a_sum_negative,       // a >= 0 > b, c >= a, b + c < 0
  c_ge_a_sum_non_negative,   // a >= 0 > b, c >= a, b + c >= 0
  c_lt_a_sum_negative,       // a >= 0 > b, c < a,  b + c < 0
  c_lt_a_sum_non_negative,   // a >= 0 > b, c < a,  b + c >= 0
};

AbsSwapCase abs_swap_case(int128 a, int128 b, int128 c);

// type1 iff the target lies strictly above L_max(t+1) - delta_min after the
// move. A missing or zero delta_min leaves the move unclassified.
MoveType classify_move(std::span<const Exact> loads_after, MachineId target, std::optional<Exact> delta_min);

// Phi(t) - Phi(t+1) >= 4 * delta_min. Type-1 records pass vacuously.
bool check_type2_phi_drop(const TraceRecord& record, Exact delta_min);

// Sorted loads of gamma_s(t+1) dominate the same-length prefix of sorted
// gamma_s(t), and |gamma_s| does not grow. Non-type-1 records pass.
bool check_llmin_monotone(const TraceRecord& record, Exact delta_min);

struct CheckResult {
  CheckResult() = default;
  explicit CheckResult(std::string check_name) : name(std::move(check_name)) {}

  std::string name;
  bool pass = true;
  std::optional<std::uint64_t> first_violation_t;
  std::uint64_t checked = 0;
  std::string note;

  void fail_at(std::uint64_t t) {
    if (pass) first_violation_t = t;
    pass = false;
  }
};

// Within each maximal block of consecutive type-1 records, the triple
// (A, B, load rank of the target at t) never repeats.
CheckResult check_type1_no_repeat(std::span<const TraceRecord> trace);

struct BoundsReport {
  bool type2_bound = true;      // 4 * delta_min * type2_count <= Phi(1)
  bool phi_upper_bound = true;  // Phi(1) <= 2 m n
  double type2_limit = 0;       // Phi(1) / (4 delta_min)
  double envelope_ratio = 0;    // T / (m^2 n^(k+1) / delta_min), reported only
  bool pass() const { return type2_bound && phi_upper_bound; }
};

BoundsReport check_bounds(const RunStats& stats, Exact delta_min, const Instance& instance, int k);

double envelope_ratio(std::uint64_t iterations, Exact delta_min, int machines, int jobs, int k, int scale_log2);

struct PhaseReport {
  std::vector<std::uint64_t> boundaries;  // first state index of every phase
  std::vector<Exact> delta_h;
  std::vector<std::vector<int>> gamma_l_sizes;  // per phase, per state
  // Rank potential of every machine at every state 0..T; filled only when
  // the initial assignment is known.
  std::vector<std::vector<std::int64_t>> rank_potential;
  CheckResult gamma_l_nondecreasing{"gamma_l_nondecreasing_per_phase"};
  CheckResult gamma_s_monotone{"gamma_s_sorted_loads_per_phase"};
  CheckResult rank_potential_increase{"rank_potential_increase"};
};

/// Phase decomposition of a k = 2 run: phase h + 1 starts at the first state
/// with Delta <= Delta_h / 2. Inside a phase the split is non-strict at
/// L_max - Delta_h / 2. The rank-potential check only needs the per-move
/// change; absolute potentials are reported when the assignment before the
/// first move is given. Throws ErrorCode::wrong_k unless k == 2.
PhaseReport phase_report(std::span<const TraceRecord> trace, const Instance& instance,
                         std::span<const MachineId> initial_assignment, int k);

// Rank of each job in the global non-decreasing p order, ties by job index;
// ranks run from 1 to n.
std::vector<int> job_ranks(const Instance& instance);

struct ValidationReport {
  std::string label;
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;

  bool all_pass() const;
  std::uint64_t violations() const;
};

struct ValidationOptions {
  std::uint64_t delta_min_budget = kDefaultWorkBudget;
  std::uint64_t seed = 0;
};

/// Recomputes every record from the instance and runs all per-iteration
/// checks. Runs with k == 2 also get the phase checks.
ValidationReport validate_trace(std::span<const TraceRecord> trace, const Instance& instance, int k,
                                const ValidationOptions& options = {});

// {"label": ..., "seed": ..., "pass": bool, "checks": [{"check", "pass", "first_violation_t", ...}]}
std::string write_validation_report(const ValidationReport& report);

}  // namespace kswap

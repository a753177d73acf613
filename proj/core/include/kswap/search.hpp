#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kswap/neighborhood.hpp"
#include "kswap/trace.hpp"

namespace kswap {

enum class InitKind { all_on_one, round_robin, lpt, random, file };

struct InitStrategy {
  InitKind kind = InitKind::all_on_one;
  std::uint64_t seed = 0;              // random
  std::vector<MachineId> assignment;   // file
};

InitKind parse_init_kind(std::string_view text);
std::string_view to_string(InitKind kind);

// lpt: jobs by non-increasing p (ties by index), each onto the currently
// least-loaded machine (ties by index).
Schedule initial_schedule(const Instance& instance, const InitStrategy& strategy);

enum class DeltaStatus { ok, zero, over_budget };

std::string_view to_string(DeltaStatus status);

struct RunStats {
  std::uint64_t iterations = 0;  // T
  std::uint64_t type1_count = 0;
  std::uint64_t type2_count = 0;
  std::uint64_t jump_count = 0;
  Exact final_makespan;
  int final_num_critical = 0;
  DeltaStatus delta_status = DeltaStatus::ok;
  Exact delta_min;  // valid when delta_status != over_budget
  Exact phi_initial;
  Exact phi_final;
};

struct RunOptions {
  // 0 selects min(m^n, 2^40).
  std::uint64_t iteration_cap = 0;
  std::uint64_t delta_min_budget = kDefaultWorkBudget;
};

std::uint64_t default_iteration_cap(int machines, int jobs);

using TraceSink = std::function<void(const TraceRecord&)>;

struct RunResult {
  Schedule schedule;
  RunStats stats;
};

/// Iterative improvement until no improving k-swap exists. Every executed
/// iteration is passed to the sink. Throws ErrorCode::iteration_limit if
/// the cap is reached, which can only happen through a defect since each
/// move strictly decreases (makespan, #critical).
RunResult run(const Instance& instance, int k, const InitStrategy& init, const PivotRule& pivot,
              const TraceSink& sink = {}, const RunOptions& options = {});

RunResult run_from(Schedule start, int k, const PivotRule& pivot, const TraceSink& sink = {},
                   const RunOptions& options = {});

std::string write_run_stats(const RunStats& stats, int scale_log2);

}  // namespace kswap

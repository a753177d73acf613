#include "kswap/search.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

#include <json.hpp>

#include "kswap/analysis.hpp"
#include "kswap/error.hpp"

namespace kswap {

InitKind parse_init_kind(std::string_view text) {
  if (text == "all-on-one") return InitKind::all_on_one;
  if (text == "round-robin") return InitKind::round_robin;
  if (text == "lpt") return InitKind::lpt;
  if (text == "random") return InitKind::random;
  if (text == "file") return InitKind::file;
  throw Error(ErrorCode::invalid_argument, "unknown init strategy '" + std::string(text) + "'");
}

std::string_view to_string(InitKind kind) {
  switch (kind) {
    case InitKind::all_on_one: return "all-on-one";
    case InitKind::round_robin: return "round-robin";
    case InitKind::lpt: return "lpt";
    case InitKind::random: return "random";
    case InitKind::file: return "file";
  }
  return "unknown";
}

std::string_view to_string(DeltaStatus status) {
  switch (status) {
    case DeltaStatus::ok: return "ok";
    case DeltaStatus::zero: return "zero";
    case DeltaStatus::over_budget: return "over-budget";
  }
  return "unknown";
}

Schedule initial_schedule(const Instance& instance, const InitStrategy& strategy) {
  const int n = instance.job_count();
  const int m = instance.machines;
  std::vector<MachineId> assignment(static_cast<std::size_t>(n), 0);
  switch (strategy.kind) {
    case InitKind::all_on_one:
      break;
    case InitKind::round_robin:
      for (int j = 0; j < n; ++j) assignment[static_cast<std::size_t>(j)] = j % m;
      break;
    case InitKind::lpt: {
      std::vector<JobId> order(static_cast<std::size_t>(n));
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(), [&](JobId a, JobId b) { return instance.p(a) > instance.p(b); });
      std::vector<Exact> loads(static_cast<std::size_t>(m));
      for (const JobId j : order) {
        const auto target = static_cast<std::size_t>(std::min_element(loads.begin(), loads.end()) - loads.begin());
        assignment[static_cast<std::size_t>(j)] = static_cast<MachineId>(target);
        loads[target] += instance.p(j);
      }
      break;
    }
    case InitKind::random: {
      Rng rng(strategy.seed);
      for (auto& slot : assignment) slot = static_cast<MachineId>(rng.index_below(static_cast<std::size_t>(m)));
      break;
    }
    case InitKind::file:
      assignment = strategy.assignment;
      break;
  }
  return Schedule(instance, std::move(assignment));
}

std::uint64_t default_iteration_cap(int machines, int jobs) {
  constexpr std::uint64_t ceiling = std::uint64_t(1) << 40;
  std::uint64_t cap = 1;
  for (int j = 0; j < jobs; ++j) {
    if (cap >= ceiling / static_cast<std::uint64_t>(std::max(machines, 1))) return ceiling;
    cap *= static_cast<std::uint64_t>(machines);
  }
  return std::max<std::uint64_t>(cap, 1);
}

RunResult run(const Instance& instance, int k, const InitStrategy& init, const PivotRule& pivot,
              const TraceSink& sink, const RunOptions& options) {
  return run_from(initial_schedule(instance, init), k, pivot, sink, options);
}

RunResult run_from(Schedule schedule, int k, const PivotRule& pivot, const TraceSink& sink,
                   const RunOptions& options) {
  if (k < 1) throw Error(ErrorCode::invalid_argument, "k must be at least 1");
  const Instance& instance = schedule.instance();
  RunStats stats;

  std::optional<Exact> delta_min;
  try {
    const DeltaMin dm = compute_delta_min(instance, k, options.delta_min_budget);
    stats.delta_min = dm.value;
    if (dm.is_zero()) {
      stats.delta_status = DeltaStatus::zero;
    } else {
      delta_min = dm.value;
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::budget_exceeded) throw;
    stats.delta_status = DeltaStatus::over_budget;
  }

  const std::uint64_t cap = options.iteration_cap != 0
                                ? options.iteration_cap
                                : default_iteration_cap(instance.machines, instance.job_count());
  Rng rng(pivot.seed);
  stats.phi_initial = potential_phi(schedule.loads());

  for (std::uint64_t t = 0;; ++t) {
    auto move = find_improving(schedule, k, pivot.kind, rng);
    if (!move) break;
    if (t >= cap)
      throw Error(ErrorCode::iteration_limit, "no local optimum after " + std::to_string(cap) + " iterations");

    const LoadTable before = load_table(schedule);
    TraceRecord record;
    record.t = t;
    record.makespan = before.makespan;
    record.num_critical = static_cast<int>(before.critical.size());
    record.phi = potential_phi(before.loads);
    record.delta = before.makespan - before.min_load;
    if (delta_min) record.gamma_l = gamma_partition(before, *delta_min, Split::strict).large;
    record.loads = before.loads;

    apply_move_in_place(schedule, *move);
    assert(schedule.loads_consistent());

    record.loads_after.assign(schedule.loads().begin(), schedule.loads().end());
    record.move_type = classify_move(record.loads_after, move->target, delta_min);
    if (record.move_type == MoveType::type1) ++stats.type1_count;
    if (record.move_type == MoveType::type2) ++stats.type2_count;
    if (move->is_jump()) ++stats.jump_count;
    record.move = std::move(*move);
    stats.iterations = t + 1;
    if (sink) sink(record);
  }

  const LoadTable final_table = load_table(schedule);
  stats.final_makespan = final_table.makespan;
  stats.final_num_critical = static_cast<int>(final_table.critical.size());
  stats.phi_final = potential_phi(final_table.loads);
  return {std::move(schedule), stats};
}

std::string write_run_stats(const RunStats& stats, int scale) {
  nlohmann::ordered_json doc;
  doc["T"] = stats.iterations;
  doc["type1"] = stats.type1_count;
  doc["type2"] = stats.type2_count;
  doc["jumps"] = stats.jump_count;
  doc["final_makespan"] = format_exact(stats.final_makespan, scale);
  doc["final_makespan_float"] = to_double(stats.final_makespan, scale);
  doc["final_num_critical"] = stats.final_num_critical;
  doc["delta_min_status"] = std::string(to_string(stats.delta_status));
  if (stats.delta_status == DeltaStatus::over_budget) {
    doc["delta_min"] = nullptr;
  } else {
    doc["delta_min"] = format_exact(stats.delta_min, scale);
    doc["delta_min_float"] = to_double(stats.delta_min, scale);
  }
  doc["phi_initial"] = format_exact(stats.phi_initial, scale);
  doc["phi_final"] = format_exact(stats.phi_final, scale);
  return doc.dump(2) + "\n";
}

}  // namespace kswap

#include "kswap/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>

#include <json.hpp>

#include "kswap/error.hpp"

namespace kswap {

Exact potential_phi(std::span<const Exact> loads) {
  std::vector<Exact> sorted(loads.begin(), loads.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  // Descending order: the i-th largest load appears with sign + against the
  // m - 1 - i smaller ones and with sign - against the i larger ones.
  const auto m = static_cast<int128>(sorted.size());
  Exact sum;
  for (std::size_t i = 0; i < sorted.size(); ++i) sum += (m - 1 - 2 * static_cast<int128>(i)) * sorted[i];
  return 2 * sum;
}

namespace {

int128 iabs(int128 v) { return v < 0 ? -v : v; }

void require_abs_swap_pre(int128 a, int128 b, int128 c) {
  if (!(0 < c && c < a - b)) throw Error(ErrorCode::invalid_argument, "abs_swap_inequality needs 0 < c < a - b");
}

}  // namespace

bool abs_swap_inequality(int128 a, int128 b, int128 c) {
  require_abs_swap_pre(a, b, c);
  return iabs(a - c) + iabs(b + c) <= iabs(a) + iabs(b);
}

AbsSwapCase abs_swap_case(int128 a, int128 b, int128 c) {
  require_abs_swap_pre(a, b, c);
  if (b >= 0) return AbsSwapCase::both_non_negative;
  if (a < 0) return AbsSwapCase::both_negative;
  if (c >= a) return b + c < 0 ? AbsSwapCase::c_ge_a_sum_negative : AbsSwapCase::c_ge_a_sum_non_negative;
  return b + c < 0 ? AbsSwapCase::c_lt_a_sum_negative : AbsSwapCase::c_lt_a_sum_non_negative;
}

MoveType classify_move(std::span<const Exact> loads_after, MachineId target, std::optional<Exact> delta_min) {
  if (!delta_min || delta_min->units() <= 0) return MoveType::unclassified;
  const Exact makespan = *std::max_element(loads_after.begin(), loads_after.end());
  return loads_after[static_cast<std::size_t>(target)] > makespan - *delta_min ? MoveType::type1 : MoveType::type2;
}

bool check_type2_phi_drop(const TraceRecord& record, Exact delta_min) {
  if (record.move_type != MoveType::type2) return true;
  return potential_phi(record.loads) - potential_phi(record.loads_after) >= 4 * delta_min;
}

namespace {

std::vector<Exact> sorted_small_loads(std::span<const Exact> loads, Exact delta_min) {
  const LoadTable table = load_table(loads);
  std::vector<Exact> out;
  for (const MachineId i : gamma_partition(table, delta_min, Split::strict).small)
    out.push_back(loads[static_cast<std::size_t>(i)]);
  std::sort(out.begin(), out.end());
  return out;
}

// Pointwise domination of the common prefix, and no growth of the set.
bool prefix_dominates(const std::vector<Exact>& before, const std::vector<Exact>& after) {
  if (after.size() > before.size()) return false;
  for (std::size_t l = 0; l < after.size(); ++l)
    if (after[l] < before[l]) return false;
  return true;
}

}  // namespace

bool check_llmin_monotone(const TraceRecord& record, Exact delta_min) {
  if (record.move_type != MoveType::type1) return true;
  return prefix_dominates(sorted_small_loads(record.loads, delta_min),
                          sorted_small_loads(record.loads_after, delta_min));
}

CheckResult check_type1_no_repeat(std::span<const TraceRecord> trace) {
  CheckResult result{"type1_no_repeat"};
  using Triple = std::tuple<std::vector<JobId>, std::vector<JobId>, int>;
  std::set<Triple> block;
  for (const auto& record : trace) {
    if (record.move_type != MoveType::type1) {
      block.clear();
      continue;
    }
    ++result.checked;
    Triple key{record.move.from_source, record.move.from_target, load_rank(record.loads, record.move.target)};
    if (!block.insert(std::move(key)).second) result.fail_at(record.t);
  }
  return result;
}

double envelope_ratio(std::uint64_t iterations, Exact delta_min, int machines, int jobs, int k, int scale_log2) {
  if (delta_min.units() <= 0) return 0;
  const double envelope = static_cast<double>(machines) * machines * std::pow(static_cast<double>(jobs), k + 1) /
                          to_double(delta_min, scale_log2);
  return static_cast<double>(iterations) / envelope;
}

BoundsReport check_bounds(const RunStats& stats, Exact delta_min, const Instance& instance, int k) {
  if (delta_min.units() <= 0) throw Error(ErrorCode::zero_delta, "check_bounds needs delta_min > 0");
  BoundsReport report;
  const int128 limit = stats.phi_initial.units() / (4 * delta_min.units());
  report.type2_bound = static_cast<int128>(stats.type2_count) <= limit;
  const Exact phi_cap = int128(2) * instance.machines * instance.job_count() * instance.one();
  report.phi_upper_bound = stats.phi_initial <= phi_cap;
  report.type2_limit = to_double(stats.phi_initial, instance.scale_log2) /
                       (4 * to_double(delta_min, instance.scale_log2));
  report.envelope_ratio = envelope_ratio(stats.iterations, delta_min, instance.machines, instance.job_count(), k,
                                         instance.scale_log2);
  return report;
}

std::vector<int> job_ranks(const Instance& instance) {
  const int n = instance.job_count();
  std::vector<JobId> order(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) order[static_cast<std::size_t>(j)] = j;
  std::stable_sort(order.begin(), order.end(), [&](JobId a, JobId b) { return instance.p(a) < instance.p(b); });
  std::vector<int> rank(static_cast<std::size_t>(n));
  for (int r = 0; r < n; ++r) rank[static_cast<std::size_t>(order[static_cast<std::size_t>(r)])] = r + 1;
  return rank;
}

PhaseReport phase_report(std::span<const TraceRecord> trace, const Instance& instance,
                         std::span<const MachineId> initial_assignment, int k) {
  if (k != 2) throw Error(ErrorCode::wrong_k, "phase analysis covers k = 2 runs, got k = " + std::to_string(k));
  PhaseReport report;
  if (trace.empty()) return report;

  std::vector<const std::vector<Exact>*> states;
  for (const auto& record : trace) states.push_back(&record.loads);
  states.push_back(&trace.back().loads_after);

  std::vector<Exact> previous_small;
  int previous_large = 0;
  for (std::size_t t = 0; t < states.size(); ++t) {
    const LoadTable table = load_table(*states[t]);
    const Exact delta = table.makespan - table.min_load;
    const bool new_phase = report.delta_h.empty() || 2 * delta <= report.delta_h.back();
    if (new_phase) {
      report.boundaries.push_back(t);
      report.delta_h.push_back(delta);
      report.gamma_l_sizes.emplace_back();
    }
    const Exact delta_h = report.delta_h.back();
    int large = static_cast<int>(table.loads.size());
    std::vector<Exact> small;
    if (delta_h.units() > 0) {
      const GammaPartition split = gamma_partition(table, delta_h, Split::non_strict, 2);
      large = static_cast<int>(split.large.size());
      for (const MachineId i : split.small) small.push_back(table.loads[static_cast<std::size_t>(i)]);
      std::sort(small.begin(), small.end());
    }
    report.gamma_l_sizes.back().push_back(large);
    if (!new_phase) {
      ++report.gamma_l_nondecreasing.checked;
      ++report.gamma_s_monotone.checked;
      // State t closes iteration t - 1.
      if (large < previous_large) report.gamma_l_nondecreasing.fail_at(t - 1);
      if (!prefix_dominates(previous_small, small)) report.gamma_s_monotone.fail_at(t - 1);
    }
    previous_large = large;
    previous_small = std::move(small);
  }

  const std::vector<int> rank = job_ranks(instance);
  const auto rank_sum = [&](const std::vector<JobId>& jobs) {
    std::int64_t s = 0;
    for (const JobId j : jobs) s += rank[static_cast<std::size_t>(j)];
    return s;
  };
  for (const auto& record : trace) {
    const Exact after_max = *std::max_element(record.loads_after.begin(), record.loads_after.end());
    const auto target = static_cast<std::size_t>(record.move.target);
    const bool stays_non_critical = record.loads[target] < record.makespan && record.loads_after[target] < after_max;
    if (!stays_non_critical) continue;
    ++report.rank_potential_increase.checked;
    if (rank_sum(record.move.from_source) - rank_sum(record.move.from_target) < 1)
      report.rank_potential_increase.fail_at(record.t);
  }

  if (!initial_assignment.empty()) {
    std::vector<MachineId> where(initial_assignment.begin(), initial_assignment.end());
    const auto m = static_cast<std::size_t>(instance.machines);
    const auto snapshot = [&] {
      std::vector<std::int64_t> potential(m, 0);
      for (std::size_t j = 0; j < where.size(); ++j)
        potential[static_cast<std::size_t>(where[j])] += rank[j];
      report.rank_potential.push_back(std::move(potential));
    };
    snapshot();
    for (const auto& record : trace) {
      for (const JobId j : record.move.from_source) where[static_cast<std::size_t>(j)] = record.move.target;
      for (const JobId j : record.move.from_target) where[static_cast<std::size_t>(j)] = record.move.source;
      snapshot();
    }
  }
  return report;
}

bool ValidationReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

std::uint64_t ValidationReport::violations() const {
  return static_cast<std::uint64_t>(
      std::count_if(checks.begin(), checks.end(), [](const CheckResult& c) { return !c.pass; }));
}

ValidationReport validate_trace(std::span<const TraceRecord> trace, const Instance& instance, int k,
                                const ValidationOptions& options) {
  ValidationReport report;
  report.label = instance.label;
  report.seed = options.seed;
  const auto m = static_cast<std::size_t>(instance.machines);

  std::optional<Exact> delta_min;
  std::string delta_note;
  try {
    const DeltaMin dm = compute_delta_min(instance, k, options.delta_min_budget);
    if (dm.is_zero()) delta_note = "skipped: delta_min is zero";
    else delta_min = dm.value;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::budget_exceeded) throw;
    delta_note = "skipped: delta_min over budget";
  }

  CheckResult consistency{"record_consistency"};
  CheckResult improving{"improving_move"};
  CheckResult descent{"strict_lexicographic_descent"};
  CheckResult lmax{"lmax_nonincreasing"};
  CheckResult lmin{"lmin_nondecreasing"};
  CheckResult delta{"delta_nonincreasing"};
  CheckResult phi_mono{"phi_nonincreasing"};
  CheckResult phi_cap{"phi_upper_bound"};
  CheckResult placement{"gamma_placement"};
  CheckResult typing{"move_type_consistent"};
  CheckResult type2_drop{"type2_phi_drop"};
  CheckResult type2_count{"type2_count_bound"};
  CheckResult llmin{"llmin_monotone"};

  std::uint64_t type2_seen = 0;
  for (std::size_t idx = 0; idx < trace.size(); ++idx) {
    const TraceRecord& r = trace[idx];
    const std::uint64_t t = r.t;

    // Structure of the record itself.
    ++consistency.checked;
    bool sane = r.t == idx && r.loads.size() == m && r.loads_after.size() == m && r.move.source >= 0 &&
                r.move.target >= 0 && static_cast<std::size_t>(r.move.source) < m &&
                static_cast<std::size_t>(r.move.target) < m && r.move.source != r.move.target &&
                !r.move.from_source.empty() && r.move.size() <= k;
    if (sane) {
      std::set<JobId> seen;
      for (const auto* set : {&r.move.from_source, &r.move.from_target})
        for (const JobId j : *set)
          if (j < 0 || j >= instance.job_count() || !seen.insert(j).second) sane = false;
    }
    if (!sane) {
      consistency.fail_at(t);
      continue;
    }
    const LoadTable before = load_table(r.loads);
    const LoadTable after = load_table(r.loads_after);
    const Exact g = gain(instance, r.move);
    std::vector<Exact> expected_after = r.loads;
    expected_after[static_cast<std::size_t>(r.move.source)] -= g;
    expected_after[static_cast<std::size_t>(r.move.target)] += g;
    if (expected_after != r.loads_after || r.makespan != before.makespan ||
        r.num_critical != static_cast<int>(before.critical.size()) || r.phi != potential_phi(r.loads) ||
        r.delta != before.makespan - before.min_load || (idx > 0 && trace[idx - 1].loads_after != r.loads))
      consistency.fail_at(t);

    ++improving.checked;
    const Exact source_load = r.loads[static_cast<std::size_t>(r.move.source)];
    const Exact target_load = r.loads[static_cast<std::size_t>(r.move.target)];
    if (source_load != before.makespan || !(Exact(0) < g && g < source_load - target_load)) improving.fail_at(t);

    ++descent.checked;
    if (!(objective(after) < objective(before))) descent.fail_at(t);
    ++lmax.checked;
    if (after.makespan > before.makespan) lmax.fail_at(t);
    ++lmin.checked;
    if (after.min_load < before.min_load) lmin.fail_at(t);
    ++delta.checked;
    if (after.makespan - after.min_load > before.makespan - before.min_load) delta.fail_at(t);
    ++phi_mono.checked;
    if (potential_phi(r.loads_after) > potential_phi(r.loads)) phi_mono.fail_at(t);

    ++typing.checked;
    const MoveType recomputed = classify_move(r.loads_after, r.move.target, delta_min);
    if (recomputed != r.move_type) typing.fail_at(t);

    if (!delta_min) continue;
    ++placement.checked;
    const GammaPartition split = gamma_partition(before, *delta_min, Split::strict);
    const auto in = [](const std::vector<MachineId>& set, MachineId i) {
      return std::find(set.begin(), set.end(), i) != set.end();
    };
    if (!in(split.large, r.move.source) || !in(split.small, r.move.target) || split.large != r.gamma_l)
      placement.fail_at(t);

    TraceRecord classified = r;
    classified.move_type = recomputed;
    if (recomputed == MoveType::type2) {
      ++type2_seen;
      ++type2_drop.checked;
      if (!check_type2_phi_drop(classified, *delta_min)) type2_drop.fail_at(t);
    } else {
      ++llmin.checked;
      if (!check_llmin_monotone(classified, *delta_min)) llmin.fail_at(t);
    }
  }

  if (!trace.empty()) {
    const Exact phi_first = potential_phi(trace.front().loads);
    ++phi_cap.checked;
    if (phi_first > int128(2) * instance.machines * instance.job_count() * instance.one()) phi_cap.fail_at(0);
    if (delta_min) {
      ++type2_count.checked;
      if (static_cast<int128>(type2_seen) > phi_first.units() / (4 * delta_min->units()))
        type2_count.fail_at(trace.back().t);
    }
  }

  for (auto* c : {&placement, &type2_drop, &type2_count, &llmin})
    if (!delta_min) c->note = delta_note;

  // The no-repeat check runs on recomputed classifications.
  std::vector<TraceRecord> reclassified(trace.begin(), trace.end());
  for (auto& r : reclassified)
    if (r.loads_after.size() == m && r.move.target >= 0 && static_cast<std::size_t>(r.move.target) < m)
      r.move_type = classify_move(r.loads_after, r.move.target, delta_min);
  CheckResult no_repeat = delta_min ? check_type1_no_repeat(reclassified) : CheckResult{"type1_no_repeat"};
  if (!delta_min) no_repeat.note = delta_note;

  report.checks = {consistency, improving, descent, lmax, lmin, delta, phi_mono, phi_cap,
                   placement, typing, type2_drop, type2_count, llmin, no_repeat};

  if (k == 2 && consistency.pass) {
    PhaseReport phases = phase_report(trace, instance, {}, k);
    report.checks.push_back(std::move(phases.gamma_l_nondecreasing));
    report.checks.push_back(std::move(phases.gamma_s_monotone));
    report.checks.push_back(std::move(phases.rank_potential_increase));
  }
  return report;
}

std::string write_validation_report(const ValidationReport& report) {
  nlohmann::ordered_json doc;
  doc["label"] = report.label;
  doc["seed"] = report.seed;
  doc["pass"] = report.all_pass();
  doc["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : report.checks) {
    nlohmann::ordered_json entry;
    entry["check"] = c.name;
    entry["pass"] = c.pass;
    entry["first_violation_t"] = c.first_violation_t ? nlohmann::ordered_json(*c.first_violation_t) : nullptr;
    entry["checked"] = c.checked;
    if (!c.note.empty()) entry["note"] = c.note;
    doc["checks"].push_back(std::move(entry));
  }
  return doc.dump(2) + "\n";
}

}  // namespace kswap

#pragma once

#include <compare>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kswap/instance.hpp"

namespace kswap {

/// Assignment of every job to a machine plus incrementally maintained loads.
///
/// The schedule refers to its instance; the instance must outlive it.
class Schedule {
public:
  Schedule(const Instance& instance, std::vector<MachineId> assignment);

  const Instance& instance() const { return *instance_; }
  int machines() const { return instance_->machines; }
  std::span<const MachineId> assignment() const { return assignment_; }
  MachineId machine_of(JobId j) const { return assignment_[static_cast<std::size_t>(j)]; }
  std::span<const Exact> loads() const { return loads_; }
  Exact load(MachineId i) const { return loads_[static_cast<std::size_t>(i)]; }

  // Ascending job indices.
  std::vector<JobId> jobs_on(MachineId i) const;

  void reassign(JobId j, MachineId target);

  // Full recompute against the incremental loads.
  bool loads_consistent() const;

  friend bool operator==(const Schedule& a, const Schedule& b) {
    return a.instance_ == b.instance_ && a.assignment_ == b.assignment_;
  }

private:
  const Instance* instance_;
  std::vector<MachineId> assignment_;
  std::vector<Exact> loads_;
};

struct LoadTable {
  std::vector<Exact> loads;
  Exact makespan;
  Exact min_load;
  std::vector<MachineId> critical;  // ascending
};

LoadTable load_table(const Schedule& schedule);
LoadTable load_table(std::span<const Exact> loads);

// Machines ordered by (load, index).
std::vector<MachineId> machines_by_load(std::span<const Exact> loads);

// 1-based rank of machine i in machines_by_load order.
int load_rank(std::span<const Exact> loads, MachineId i);

// Load of the ell-th minimum-load machine, 1 <= ell <= m.
Exact ellmin_load(const LoadTable& table, int ell);

enum class Split {
  strict,      // large: L_i >  L_max - gap
  non_strict,  // large: L_i >= L_max - gap
};

struct GammaPartition {
  std::vector<MachineId> large;
  std::vector<MachineId> small;
};

// The gap is gap / gap_divisor so that half-gaps stay exact.
GammaPartition gamma_partition(const LoadTable& table, Exact gap, Split split, int gap_divisor = 1);

struct Objective {
  Exact makespan;
  int num_critical = 0;

  friend auto operator<=>(const Objective&, const Objective&) = default;
};

Objective objective(const LoadTable& table);

std::string write_schedule(const Schedule& schedule);
std::vector<MachineId> parse_schedule(std::string_view text);

}  // namespace kswap

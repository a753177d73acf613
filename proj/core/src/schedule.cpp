#include "kswap/schedule.hpp"

#include <algorithm>
#include <numeric>

#include <json.hpp>

#include "kswap/error.hpp"

namespace kswap {

Schedule::Schedule(const Instance& instance, std::vector<MachineId> assignment)
    : instance_(&instance), assignment_(std::move(assignment)),
      loads_(static_cast<std::size_t>(instance.machines)) {
  if (static_cast<int>(assignment_.size()) != instance.job_count())
    throw Error(ErrorCode::invalid_argument, "assignment length " + std::to_string(assignment_.size()) +
                                                 " does not match job count " +
                                                 std::to_string(instance.job_count()));
  for (std::size_t j = 0; j < assignment_.size(); ++j) {
    const MachineId i = assignment_[j];
    if (i < 0 || i >= instance.machines)
      throw Error(ErrorCode::invalid_argument, "job " + std::to_string(j) + " assigned to machine " +
                                                   std::to_string(i) + " outside [0, m)");
    loads_[static_cast<std::size_t>(i)] += instance.jobs[j];
  }
}

std::vector<JobId> Schedule::jobs_on(MachineId i) const {
  std::vector<JobId> out;
  for (std::size_t j = 0; j < assignment_.size(); ++j)
    if (assignment_[j] == i) out.push_back(static_cast<JobId>(j));
  return out;
}

void Schedule::reassign(JobId j, MachineId target) {
  auto& slot = assignment_[static_cast<std::size_t>(j)];
  const Exact p = instance_->p(j);
  loads_[static_cast<std::size_t>(slot)] -= p;
  loads_[static_cast<std::size_t>(target)] += p;
  slot = target;
}

bool Schedule::loads_consistent() const {
  std::vector<Exact> fresh(loads_.size());
  for (std::size_t j = 0; j < assignment_.size(); ++j)
    fresh[static_cast<std::size_t>(assignment_[j])] += instance_->jobs[j];
  return fresh == loads_;
}

LoadTable load_table(std::span<const Exact> loads) {
  if (loads.empty()) throw Error(ErrorCode::invalid_argument, "load table needs at least one machine");
  LoadTable table;
  table.loads.assign(loads.begin(), loads.end());
  table.makespan = *std::max_element(loads.begin(), loads.end());
  table.min_load = *std::min_element(loads.begin(), loads.end());
  for (std::size_t i = 0; i < loads.size(); ++i)
    if (loads[i] == table.makespan) table.critical.push_back(static_cast<MachineId>(i));
  return table;
}

LoadTable load_table(const Schedule& schedule) { return load_table(schedule.loads()); }

std::vector<MachineId> machines_by_load(std::span<const Exact> loads) {
  std::vector<MachineId> order(loads.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](MachineId a, MachineId b) {
    return loads[static_cast<std::size_t>(a)] < loads[static_cast<std::size_t>(b)];
  });
  return order;
}

int load_rank(std::span<const Exact> loads, MachineId i) {
  const Exact own = loads[static_cast<std::size_t>(i)];
  int rank = 1;
  for (std::size_t other = 0; other < loads.size(); ++other) {
    if (loads[other] < own || (loads[other] == own && static_cast<MachineId>(other) < i)) ++rank;
  }
  return rank;
}

Exact ellmin_load(const LoadTable& table, int ell) {
  if (ell < 1 || ell > static_cast<int>(table.loads.size()))
    throw Error(ErrorCode::invalid_argument, "ell " + std::to_string(ell) + " outside [1, m]");
  const auto order = machines_by_load(table.loads);
  return table.loads[static_cast<std::size_t>(order[static_cast<std::size_t>(ell - 1)])];
}

GammaPartition gamma_partition(const LoadTable& table, Exact gap, Split split, int gap_divisor) {
  if (gap.units() <= 0 || gap_divisor < 1)
    throw Error(ErrorCode::invalid_argument, "gamma_partition needs a positive gap");
  // Compare divisor * L_i against divisor * L_max - gap.
  const Exact threshold = gap_divisor * table.makespan - gap;
  GammaPartition out;
  for (std::size_t i = 0; i < table.loads.size(); ++i) {
    const Exact scaled = gap_divisor * table.loads[i];
    const bool large = split == Split::strict ? scaled > threshold : scaled >= threshold;
    (large ? out.large : out.small).push_back(static_cast<MachineId>(i));
  }
  return out;
}

Objective objective(const LoadTable& table) {
  return {table.makespan, static_cast<int>(table.critical.size())};
}

std::string write_schedule(const Schedule& schedule) {
  nlohmann::json doc = {{"assignment", std::vector<MachineId>(schedule.assignment().begin(),
                                                               schedule.assignment().end())}};
  return doc.dump() + "\n";
}

std::vector<MachineId> parse_schedule(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::malformed_document, e.what());
  }
  if (!doc.is_object() || !doc.contains("assignment") || !doc["assignment"].is_array())
    throw Error(ErrorCode::malformed_document, "schedule needs an 'assignment' array");
  std::vector<MachineId> out;
  for (const auto& v : doc["assignment"]) {
    if (!v.is_number_integer()) throw Error(ErrorCode::malformed_document, "assignment entries must be integers");
    out.push_back(v.get<MachineId>());
  }
  return out;
}

}  // namespace kswap

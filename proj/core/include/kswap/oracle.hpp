#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "kswap/instance.hpp"
#include "kswap/neighborhood.hpp"

// Brute-force references. None of these reuse the enumeration or load
// bookkeeping of the search code, so agreement is evidence.
namespace kswap::oracle {

struct LocalOptResult {
  bool locally_optimal = true;
  std::uint64_t moves_examined = 0;
  std::optional<Move> counterexample;
};

LocalOptResult verify_local_opt(const Instance& instance, std::span<const MachineId> assignment, int k,
                                std::uint64_t budget = kDefaultWorkBudget);

// Exact optimal makespan by branch and bound over assignments.
Exact global_opt(const Instance& instance, std::uint64_t node_budget = kDefaultWorkBudget);

// delta_min over ternary job labellings {neither, A, B}.
Exact delta_min_reference(const Instance& instance, int k, std::uint64_t budget = kDefaultWorkBudget);

}  // namespace kswap::oracle

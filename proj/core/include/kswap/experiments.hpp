#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kswap/instance.hpp"
#include "kswap/neighborhood.hpp"
#include "kswap/search.hpp"

namespace kswap {

struct Cell {
  int n = 6;
  int machines = 2;
  int k = 2;
  Rational phi = Rational::integer(1);
  BasePattern bases = BasePattern::zero;
  InitKind init = InitKind::all_on_one;
  PivotKind pivot = PivotKind::first;
};

struct ExperimentConfig {
  std::vector<Cell> cells;
  int trials = 1;
  std::uint64_t master_seed = 0;
  int scale_log2 = kDefaultScaleLog2;
  std::uint64_t delta_min_budget = kDefaultWorkBudget;
  std::uint64_t verify_budget = kDefaultWorkBudget;
  std::uint64_t global_opt_budget = kDefaultWorkBudget;
  int global_opt_max_n = 14;  // global optimum only for n at or below this
  int threads = 0;            // 0: hardware concurrency
  std::string trials_csv;
  std::string summary_csv;
};

/// JSON config. Grid keys ("n", "m", "k", "phi", "bases", "init", "pivot")
/// take a scalar or a list; cells are the cartesian product in that key
/// order, last key fastest. An explicit "cells" array is accepted instead.
ExperimentConfig parse_experiment_config(std::string_view text);

struct TrialRecord {
  std::size_t cell = 0;
  Cell params;
  int trial = 0;
  std::uint64_t seed = 0;
  int scale_log2 = kDefaultScaleLog2;
  RunStats stats;
  std::optional<Exact> global_opt;
  std::optional<bool> locally_optimal;  // empty when over budget
  std::uint64_t violations = 0;
  std::string status = "ok";  // or the error that stopped the trial
  bool flagged() const { return violations != 0 || status != "ok" || locally_optimal == false; }
};

std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t cell, int trial);

/// Runs every (cell, trial) pair. The instance, initial schedule and pivot
/// each draw from seeds derived from the trial seed, so records do not
/// depend on thread scheduling.
std::vector<TrialRecord> run_batch(const ExperimentConfig& config);

std::string trials_csv(const std::vector<TrialRecord>& records);

struct CellSummary {
  std::size_t cell = 0;
  Cell params;
  std::size_t trials = 0;
  double mean_T = 0;
  double median_T = 0;
  std::uint64_t max_T = 0;
  double mean_delta_min = 0;
  std::uint64_t violations = 0;
  std::size_t flagged = 0;
  double mean_envelope_ratio = 0;
  double max_envelope_ratio = 0;
};

// Throws ErrorCode::empty_input on no records.
std::vector<CellSummary> summarize(const std::vector<TrialRecord>& records);
std::string summary_csv(const std::vector<CellSummary>& rows);

struct TailEstimate {
  std::uint64_t trials = 0;
  std::uint64_t hits = 0;   // trials with delta_min <= alpha
  double empirical = 0;
  double bound = 0;         // 2^(k+1) n^k alpha phi
  double sigma = 0;         // binomial standard deviation at the bound
  bool vacuous = false;     // bound >= 1
  bool within_bound() const { return vacuous || empirical <= bound + 3 * sigma; }
};

TailEstimate estimate_delta_tail(int n, int k, const Rational& phi, const Rational& alpha, std::uint64_t trials,
                                 std::uint64_t seed, BasePattern bases = BasePattern::zero,
                                 int scale_log2 = kDefaultScaleLog2, int threads = 0);

}  // namespace kswap

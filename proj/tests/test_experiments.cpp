#include <doctest.h>

#include <set>

#include "helpers.hpp"
#include "kswap/error.hpp"
#include "kswap/experiments.hpp"

using namespace kswap;

TEST_SUITE("experiments") {

TEST_CASE("grid config expands to the cartesian product") {
  const auto config = parse_experiment_config(R"({
    "n": [5, 6], "m": 2, "k": [1, 2], "phi": "1", "pivot": ["first", "random"],
    "trials": 3, "master_seed": 9, "trials_csv": "t.csv", "summary_csv": "s.csv"})");
  CHECK(config.cells.size() == 8);
  CHECK(config.trials == 3);
  CHECK(config.master_seed == 9);
  CHECK(config.trials_csv == "t.csv");
  const auto explicit_cells = parse_experiment_config(R"({"cells": [{"n": 4, "m": 3, "k": 3, "phi": 8,
    "bases": "clustered", "init": "lpt", "pivot": "best"}]})");
  REQUIRE(explicit_cells.cells.size() == 1);
  const Cell& c = explicit_cells.cells[0];
  CHECK(c.n == 4);
  CHECK(c.machines == 3);
  CHECK(c.phi == Rational::integer(8));
  CHECK(c.bases == BasePattern::clustered);
  CHECK(c.init == InitKind::lpt);
  CHECK(c.pivot == PivotKind::best);
  CHECK_THROWS_AS(parse_experiment_config(R"({"trials": 0})"), Error);
  CHECK_THROWS_AS(parse_experiment_config("[1]"), Error);
  CHECK_THROWS_AS(parse_experiment_config(R"({"pivot": "sideways"})"), Error);
}

TEST_CASE("two cells by three trials") {
  ExperimentConfig config;
  config.cells = {Cell{5, 2, 2}, Cell{6, 3, 1}};
  config.trials = 3;
  config.master_seed = 4;
  const auto records = run_batch(config);
  REQUIRE(records.size() == 6);
  std::set<std::uint64_t> seeds;
  for (const auto& r : records) {
    seeds.insert(r.seed);
    CHECK_FALSE(r.flagged());
    CHECK(r.global_opt.has_value());
    CHECK(r.seed == trial_seed(4, r.cell, r.trial));
  }
  CHECK(seeds.size() == 6);
  const auto rows = summarize(records);
  REQUIRE(rows.size() == 2);
  for (const auto& row : rows) {
    CHECK(row.violations == 0);
    CHECK(row.trials == 3);
  }
  CHECK_THROWS_AS(summarize({}), Error);
}

TEST_CASE("batch output is independent of thread count") {
  ExperimentConfig config;
  config.cells = {Cell{7, 2, 2, Rational::integer(1), BasePattern::zero, InitKind::random, PivotKind::random},
                  Cell{6, 3, 3, Rational::integer(4), BasePattern::spread, InitKind::lpt, PivotKind::best}};
  config.trials = 5;
  config.master_seed = 77;
  config.threads = 1;
  const auto one = trials_csv(run_batch(config));
  config.threads = 4;
  const auto four = trials_csv(run_batch(config));
  CHECK(one == four);
  CHECK(one.rfind("cell,n,m,k,phi,pivot,init,trial,seed,T,type1,type2,jumps,delta_min,phi_initial,final_makespan,"
                  "global_opt,violations",
                  0) == 0);
}

TEST_CASE("n=6 m=2 k=2 cell respects the type-2 bound") {
  ExperimentConfig config;
  config.cells = {Cell{6, 2, 2}};
  config.trials = 1000;
  config.master_seed = 1;
  const auto records = run_batch(config);
  double sum = 0;
  for (const auto& r : records) {
    CHECK(r.violations == 0);
    sum += static_cast<double>(r.stats.iterations);
    if (r.stats.delta_status == DeltaStatus::ok)
      CHECK(static_cast<int128>(r.stats.type2_count) * 4 * r.stats.delta_min.units() <= r.stats.phi_initial.units());
  }
  CHECK(std::isfinite(sum / 1000));
}

TEST_CASE("over-budget trials are recorded and the batch continues") {
  ExperimentConfig config;
  config.cells = {Cell{9, 2, 3}};
  config.trials = 2;
  config.delta_min_budget = 5;
  config.verify_budget = 5;
  const auto records = run_batch(config);
  REQUIRE(records.size() == 2);
  for (const auto& r : records) {
    CHECK(r.stats.delta_status == DeltaStatus::over_budget);
    CHECK_FALSE(r.locally_optimal.has_value());
  }
  const auto csv = trials_csv(records);
  CHECK(csv.find("unchecked") != std::string::npos);
}

TEST_CASE("delta tail estimate") {
  const auto tail = estimate_delta_tail(6, 2, Rational::integer(1), Rational{1, 1000}, 2000, 5);
  CHECK(tail.bound == doctest::Approx(0.288));
  CHECK_FALSE(tail.vacuous);
  CHECK(tail.within_bound());
  CHECK(tail.trials == 2000);
  const auto wide = estimate_delta_tail(6, 2, Rational::integer(1), Rational::integer(2), 200, 5);
  CHECK(wide.vacuous);
  CHECK(wide.empirical == doctest::Approx(1.0));
  CHECK_THROWS_AS(estimate_delta_tail(6, 2, Rational::integer(1), Rational::integer(3), 10, 5), Error);
  // identical seeds give identical estimates
  CHECK(estimate_delta_tail(5, 2, Rational::integer(1), Rational{1, 100}, 300, 8).hits ==
        estimate_delta_tail(5, 2, Rational::integer(1), Rational{1, 100}, 300, 8, BasePattern::zero, 53, 1).hits);
}

TEST_CASE("clustered phi 8 has a heavier tail than phi 1") {
  const Rational alpha{1, 1000};
  const auto flat = estimate_delta_tail(6, 2, Rational::integer(1), alpha, 3000, 13);
  const auto peaked = estimate_delta_tail(6, 2, Rational::integer(8), alpha, 3000, 13, BasePattern::clustered);
  CHECK(peaked.empirical > flat.empirical);
  CHECK(peaked.within_bound());
}

}

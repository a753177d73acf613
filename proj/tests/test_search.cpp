#include <doctest.h>

#include "helpers.hpp"
#include "kswap/error.hpp"
#include "kswap/oracle.hpp"
#include "kswap/search.hpp"
#include "oracles/brute.hpp"

using namespace kswap;

namespace {
std::vector<TraceRecord> collect(const Instance& inst, int k, InitStrategy init, PivotRule pivot, RunResult* out = nullptr) {
  std::vector<TraceRecord> trace;
  auto r = run(inst, k, init, pivot, [&](const TraceRecord& rec) { trace.push_back(rec); });
  if (out) *out = std::move(r);
  return trace;
}
}  // namespace

TEST_SUITE("search") {

TEST_CASE("initial schedules") {
  const auto inst = th::floats({0.6, 0.5, 0.2}, 2);
  const auto all = initial_schedule(inst, {InitKind::all_on_one});
  CHECK(all.load(0) == inst.total());
  CHECK(all.load(1) == Exact());

  const auto four = th::floats({0.5, 0.25, 0.125, 0.0625}, 2);
  const auto rr = initial_schedule(four, {InitKind::round_robin});
  CHECK(rr.jobs_on(0) == std::vector<JobId>{0, 2});
  CHECK(rr.jobs_on(1) == std::vector<JobId>{1, 3});

  // 0.6 -> machine 0, 0.5 -> machine 1, 0.2 -> the lighter machine 1.
  const auto lpt = initial_schedule(inst, {InitKind::lpt});
  CHECK(lpt.jobs_on(0) == std::vector<JobId>{0});
  CHECK(lpt.jobs_on(1) == std::vector<JobId>{1, 2});
  CHECK(lpt.load(0) == inst.p(0));
  CHECK(lpt.load(1) == th::sum(inst, {1, 2}));

  const auto r1 = initial_schedule(inst, {InitKind::random, 11});
  const auto r2 = initial_schedule(inst, {InitKind::random, 11});
  CHECK(r1 == r2);

  const auto file = initial_schedule(inst, {InitKind::file, 0, {1, 0, 1}});
  CHECK(file.jobs_on(0) == std::vector<JobId>{1});
  CHECK_THROWS_AS(initial_schedule(inst, {InitKind::file, 0, {1, 0}}), Error);
  CHECK_THROWS_AS(initial_schedule(inst, {InitKind::file, 0, {1, 0, 5}}), Error);
  CHECK(parse_init_kind("round-robin") == InitKind::round_robin);
  CHECK_THROWS_AS(parse_init_kind("greedy"), Error);
}

TEST_CASE("run reaches the global optimum 0.7") {
  const auto inst = th::floats({0.6, 0.5, 0.2}, 2);
  RunResult result{initial_schedule(inst, {}), {}};
  const auto trace = collect(inst, 2, {InitKind::all_on_one}, {PivotKind::first, 0}, &result);
  const Exact opt = th::sum(inst, {1, 2});
  CHECK(result.stats.final_makespan == opt);
  CHECK(brute::global_opt_exhaustive(inst) == opt);
  CHECK(result.stats.iterations == trace.size());
  CHECK(oracle::verify_local_opt(inst, result.schedule.assignment(), 2).locally_optimal);
  CHECK(result.stats.phi_initial == 2 * inst.total());
  CHECK(result.stats.delta_status == DeltaStatus::ok);
  CHECK(result.stats.type1_count + result.stats.type2_count == result.stats.iterations);
}

TEST_CASE("already optimal inputs take zero iterations") {
  const auto eq = th::floats({0.5, 0.5}, 2);
  const auto r = run(eq, 2, {InitKind::round_robin}, {});
  CHECK(r.stats.iterations == 0);
  CHECK(r.stats.delta_status == DeltaStatus::zero);

  const auto one = th::floats({0.75}, 2);
  const auto r1 = run(one, 1, {InitKind::all_on_one}, {});
  CHECK(r1.stats.iterations == 0);
  CHECK(r1.stats.final_makespan == one.p(0));
}

TEST_CASE("runs are deterministic for every pivot") {
  const auto inst = generate_uniform(9, 3, 5);
  for (const auto kind : {PivotKind::first, PivotKind::best, PivotKind::random}) {
    const auto a = collect(inst, 2, {InitKind::random, 4}, {kind, 8});
    const auto b = collect(inst, 2, {InitKind::random, 4}, {kind, 8});
    CHECK(a == b);
  }
}

TEST_CASE("trace records chain and describe the pre-move state") {
  const auto inst = generate_uniform(8, 3, 21);
  const auto trace = collect(inst, 2, {InitKind::all_on_one}, {PivotKind::random, 3});
  REQUIRE_FALSE(trace.empty());
  for (std::size_t t = 0; t < trace.size(); ++t) {
    CHECK(trace[t].t == t);
    CHECK(trace[t].phi == brute::phi_direct(trace[t].loads));
    if (t > 0) CHECK(trace[t].loads == trace[t - 1].loads_after);
  }
}

TEST_CASE("trace json round trips") {
  const auto inst = generate_uniform(7, 3, 2);
  const auto trace = collect(inst, 3, {InitKind::all_on_one}, {PivotKind::best, 0});
  std::string text;
  for (const auto& r : trace) text += write_trace_record(r, inst.scale_log2) + "\n";
  std::istringstream in(text);
  CHECK(read_trace(in, inst.scale_log2) == trace);
  const auto line = write_trace_record(trace[0], inst.scale_log2);
  CHECK(line.rfind("{\"t\":0,\"move\":{\"i\":0,\"ip\":", 0) == 0);
  CHECK(line.find("\"loads_after\"") != std::string::npos);
  CHECK_THROWS_AS(parse_trace_record("{\"t\": 1}", inst.scale_log2), Error);
}

TEST_CASE("iteration cap raises") {
  const auto inst = generate_uniform(8, 2, 9);
  RunOptions options;
  options.iteration_cap = 1;
  try {
    run(inst, 2, {InitKind::all_on_one}, {}, {}, options);
    FAIL("expected iteration limit");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::iteration_limit);
  }
  CHECK(default_iteration_cap(2, 3) == 8);
  CHECK(default_iteration_cap(4, 40) == std::uint64_t(1) << 40);
}

TEST_CASE("over-budget delta_min leaves the run intact") {
  const auto inst = generate_uniform(10, 2, 4);
  RunOptions options;
  options.delta_min_budget = 10;
  const auto r = run(inst, 2, {InitKind::all_on_one}, {}, {}, options);
  CHECK(r.stats.delta_status == DeltaStatus::over_budget);
  CHECK(oracle::verify_local_opt(inst, r.schedule.assignment(), 2).locally_optimal);
}

TEST_CASE("stats json carries exact values") {
  const auto inst = th::floats({0.5, 0.375, 0.125}, 2);
  const auto r = run(inst, 2, {InitKind::all_on_one}, {});
  const auto text = write_run_stats(r.stats, inst.scale_log2);
  CHECK(text.find("\"T\"") != std::string::npos);
  CHECK(text.find("\"delta_min\": \"1125899906842624/2^53\"") != std::string::npos);
}

}

#include "kswap/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iomanip>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "kswap/analysis.hpp"
#include "kswap/error.hpp"
#include "kswap/oracle.hpp"

namespace kswap {

using nlohmann::json;

namespace {

std::vector<json> as_list(const json& doc, const char* key, json fallback) {
  if (!doc.contains(key)) return {std::move(fallback)};
  const json& v = doc[key];
  if (v.is_array()) {
    if (v.empty()) throw Error(ErrorCode::malformed_document, std::string("grid key '") + key + "' is empty");
    return {v.begin(), v.end()};
  }
  return {v};
}

Rational rational_from_json(const json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational::integer(v.get<std::int64_t>());
  if (v.is_number()) {
    std::ostringstream out;
    out << std::setprecision(17) << v.get<double>();
    return parse_rational(out.str());
  }
  throw Error(ErrorCode::malformed_document, "expected a rational number");
}

Cell cell_from_json(const json& c) {
  Cell cell;
  cell.n = c.value("n", cell.n);
  cell.machines = c.value("m", cell.machines);
  cell.k = c.value("k", cell.k);
  if (c.contains("phi")) cell.phi = rational_from_json(c["phi"]);
  if (c.contains("bases")) cell.bases = parse_base_pattern(c["bases"].get<std::string>());
  if (c.contains("init")) cell.init = parse_init_kind(c["init"].get<std::string>());
  if (c.contains("pivot")) cell.pivot = parse_pivot_kind(c["pivot"].get<std::string>());
  if (cell.n < 1 || cell.machines < 1 || cell.k < 1)
    throw Error(ErrorCode::invalid_argument, "cells need n, m, k >= 1");
  if (cell.phi < Rational::integer(1)) throw Error(ErrorCode::invalid_argument, "phi must be at least 1");
  if (cell.init == InitKind::file) throw Error(ErrorCode::invalid_argument, "experiments cannot use init 'file'");
  return cell;
}

template <class F>
void parallel_for(std::size_t count, int threads, F&& body) {
  std::size_t workers = threads > 0 ? static_cast<std::size_t>(threads) : std::thread::hardware_concurrency();
  workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(count, 1));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::jthread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

std::string fmt_double(double v) {
  std::ostringstream out;
  out << std::setprecision(17) << v;
  return out.str();
}

}  // namespace

ExperimentConfig parse_experiment_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::malformed_document, e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::malformed_document, "experiment config must be a JSON object");
  ExperimentConfig config;
  try {
    config.trials = doc.value("trials", config.trials);
    config.master_seed = doc.value("master_seed", config.master_seed);
    config.scale_log2 = doc.value("scale_log2", config.scale_log2);
    config.delta_min_budget = doc.value("delta_min_budget", config.delta_min_budget);
    config.verify_budget = doc.value("verify_budget", config.verify_budget);
    config.global_opt_budget = doc.value("global_opt_budget", config.global_opt_budget);
    config.global_opt_max_n = doc.value("global_opt_max_n", config.global_opt_max_n);
    config.threads = doc.value("threads", config.threads);
    config.trials_csv = doc.value("trials_csv", std::string("trials.csv"));
    config.summary_csv = doc.value("summary_csv", std::string("summary.csv"));

    if (doc.contains("cells")) {
      for (const auto& c : doc["cells"]) config.cells.push_back(cell_from_json(c));
    } else {
      const auto ns = as_list(doc, "n", 6);
      const auto ms = as_list(doc, "m", 2);
      const auto ks = as_list(doc, "k", 2);
      const auto phis = as_list(doc, "phi", 1);
      const auto bases = as_list(doc, "bases", "zero");
      const auto inits = as_list(doc, "init", "all-on-one");
      const auto pivots = as_list(doc, "pivot", "first");
      for (const auto& n : ns)
        for (const auto& m : ms)
          for (const auto& k : ks)
            for (const auto& phi : phis)
              for (const auto& b : bases)
                for (const auto& init : inits)
                  for (const auto& pivot : pivots)
                    config.cells.push_back(cell_from_json(
                        {{"n", n}, {"m", m}, {"k", k}, {"phi", phi}, {"bases", b}, {"init", init}, {"pivot", pivot}}));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::malformed_document, e.what());
  }
  if (config.trials < 1) throw Error(ErrorCode::invalid_argument, "trials must be at least 1");
  if (config.cells.empty()) throw Error(ErrorCode::invalid_argument, "experiment has no cells");
  return config;
}

std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t cell, int trial) {
  return derive_seed(master_seed, cell, static_cast<std::uint64_t>(trial));
}

namespace {

TrialRecord run_trial(const ExperimentConfig& config, std::size_t cell_index, int trial) {
  const Cell& cell = config.cells[cell_index];
  TrialRecord record;
  record.cell = cell_index;
  record.params = cell;
  record.trial = trial;
  record.seed = trial_seed(config.master_seed, cell_index, trial);
  record.scale_log2 = config.scale_log2;
  try {
    const auto bases = make_bases(cell.bases, cell.n, cell.phi);
    Instance instance = generate_smoothed(bases, cell.machines, cell.phi, record.seed, config.scale_log2);
    instance.label = "cell " + std::to_string(cell_index) + " trial " + std::to_string(trial);
    const InitStrategy init{cell.init, derive_seed(record.seed, 1), {}};
    const PivotRule pivot{cell.pivot, derive_seed(record.seed, 2)};
    const Schedule start = initial_schedule(instance, init);
    const std::vector<MachineId> initial_assignment(start.assignment().begin(), start.assignment().end());

    std::vector<TraceRecord> trace;
    RunOptions options;
    options.delta_min_budget = config.delta_min_budget;
    const RunResult result = run_from(start, cell.k, pivot, [&](const TraceRecord& r) { trace.push_back(r); }, options);
    record.stats = result.stats;

    ValidationOptions validation;
    validation.delta_min_budget = config.delta_min_budget;
    validation.seed = record.seed;
    const ValidationReport report = validate_trace(trace, instance, cell.k, validation);
    record.violations = report.violations();
    if (result.stats.delta_status == DeltaStatus::ok &&
        !check_bounds(result.stats, result.stats.delta_min, instance, cell.k).pass())
      ++record.violations;

    try {
      const auto certificate =
          oracle::verify_local_opt(instance, result.schedule.assignment(), cell.k, config.verify_budget);
      record.locally_optimal = certificate.locally_optimal;
      if (!certificate.locally_optimal) ++record.violations;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::budget_exceeded) throw;
    }
    if (cell.n <= config.global_opt_max_n) {
      try {
        record.global_opt = oracle::global_opt(instance, config.global_opt_budget);
        if (*record.global_opt > result.stats.final_makespan) ++record.violations;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::budget_exceeded) throw;
      }
    }
  } catch (const Error& e) {
    record.status = std::string(to_string(e.code()));
  }
  return record;
}

}  // namespace

std::vector<TrialRecord> run_batch(const ExperimentConfig& config) {
  const std::size_t per_cell = static_cast<std::size_t>(config.trials);
  std::vector<TrialRecord> records(config.cells.size() * per_cell);
  parallel_for(records.size(), config.threads, [&](std::size_t idx) {
    records[idx] = run_trial(config, idx / per_cell, static_cast<int>(idx % per_cell));
  });
  return records;
}

std::string trials_csv(const std::vector<TrialRecord>& records) {
  std::ostringstream out;
  out << "cell,n,m,k,phi,pivot,init,trial,seed,T,type1,type2,jumps,delta_min,phi_initial,final_makespan,"
         "global_opt,violations,bases,delta_min_float,phi_initial_float,final_makespan_float,global_opt_float,"
         "locally_optimal,status\n";
  for (const auto& r : records) {
    const int s = r.scale_log2;
    const bool have_delta = r.stats.delta_status != DeltaStatus::over_budget && r.status == "ok";
    out << r.cell << ',' << r.params.n << ',' << r.params.machines << ',' << r.params.k << ','
        << to_string(r.params.phi) << ',' << to_string(r.params.pivot) << ',' << to_string(r.params.init) << ','
        << r.trial << ',' << r.seed << ',' << r.stats.iterations << ',' << r.stats.type1_count << ','
        << r.stats.type2_count << ',' << r.stats.jump_count << ','
        << (have_delta ? format_exact(r.stats.delta_min, s) : "") << ','
        << format_exact(r.stats.phi_initial, s) << ',' << format_exact(r.stats.final_makespan, s) << ','
        << (r.global_opt ? format_exact(*r.global_opt, s) : "") << ',' << r.violations << ','
        << to_string(r.params.bases) << ',' << (have_delta ? fmt_double(to_double(r.stats.delta_min, s)) : "")
        << ',' << fmt_double(to_double(r.stats.phi_initial, s)) << ','
        << fmt_double(to_double(r.stats.final_makespan, s)) << ','
        << (r.global_opt ? fmt_double(to_double(*r.global_opt, s)) : "") << ','
        << (r.locally_optimal ? (*r.locally_optimal ? "yes" : "no") : "unchecked") << ',' << r.status << '\n';
  }
  return out.str();
}

std::vector<CellSummary> summarize(const std::vector<TrialRecord>& records) {
  if (records.empty()) throw Error(ErrorCode::empty_input, "no trial records to summarize");
  std::map<std::size_t, std::vector<const TrialRecord*>> by_cell;
  for (const auto& r : records) by_cell[r.cell].push_back(&r);
  std::vector<CellSummary> rows;
  for (const auto& [cell, members] : by_cell) {
    CellSummary row;
    row.cell = cell;
    row.params = members.front()->params;
    row.trials = members.size();
    std::vector<std::uint64_t> ts;
    std::size_t with_delta = 0;
    std::size_t with_ratio = 0;
    for (const TrialRecord* r : members) {
      ts.push_back(r->stats.iterations);
      row.violations += r->violations;
      if (r->flagged()) ++row.flagged;
      if (r->status != "ok" || r->stats.delta_status == DeltaStatus::over_budget) continue;
      ++with_delta;
      row.mean_delta_min += to_double(r->stats.delta_min, r->scale_log2);
      if (r->stats.delta_status == DeltaStatus::ok) {
        const double ratio = envelope_ratio(r->stats.iterations, r->stats.delta_min, r->params.machines, r->params.n,
                                            r->params.k, r->scale_log2);
        ++with_ratio;
        row.mean_envelope_ratio += ratio;
        row.max_envelope_ratio = std::max(row.max_envelope_ratio, ratio);
      }
    }
    std::sort(ts.begin(), ts.end());
    double sum = 0;
    for (const auto t : ts) sum += static_cast<double>(t);
    row.mean_T = sum / static_cast<double>(ts.size());
    const std::size_t mid = ts.size() / 2;
    row.median_T = ts.size() % 2 == 1 ? static_cast<double>(ts[mid])
                                      : (static_cast<double>(ts[mid - 1]) + static_cast<double>(ts[mid])) / 2;
    row.max_T = ts.back();
    if (with_delta > 0) row.mean_delta_min /= static_cast<double>(with_delta);
    if (with_ratio > 0) row.mean_envelope_ratio /= static_cast<double>(with_ratio);
    rows.push_back(row);
  }
  return rows;
}

std::string summary_csv(const std::vector<CellSummary>& rows) {
  std::ostringstream out;
  out << "cell,n,m,k,phi,bases,pivot,init,trials,mean_T,median_T,max_T,mean_delta_min,violations,flagged,"
         "mean_envelope_ratio,max_envelope_ratio\n";
  for (const auto& r : rows) {
    out << r.cell << ',' << r.params.n << ',' << r.params.machines << ',' << r.params.k << ','
        << to_string(r.params.phi) << ',' << to_string(r.params.bases) << ',' << to_string(r.params.pivot) << ','
        << to_string(r.params.init) << ',' << r.trials << ',' << fmt_double(r.mean_T) << ','
        << fmt_double(r.median_T) << ',' << r.max_T << ',' << fmt_double(r.mean_delta_min) << ',' << r.violations
        << ',' << r.flagged << ',' << fmt_double(r.mean_envelope_ratio) << ',' << fmt_double(r.max_envelope_ratio)
        << '\n';
  }
  return out.str();
}

TailEstimate estimate_delta_tail(int n, int k, const Rational& phi, const Rational& alpha, std::uint64_t trials,
                                 std::uint64_t seed, BasePattern bases, int scale_log2, int threads) {
  if (trials < 1) throw Error(ErrorCode::invalid_argument, "trials must be at least 1");
  if (alpha <= Rational::integer(0) || alpha > Rational::integer(k))
    throw Error(ErrorCode::invalid_argument, "alpha must lie in (0, k]");
  // delta_min <= alpha  <=>  units <= floor(alpha * 2^s), units being integral.
  const auto threshold = static_cast<int128>(floor_scaled(alpha, scale_log2));
  const auto base_values = make_bases(bases, n, phi);
  std::vector<char> hit(trials, 0);
  parallel_for(trials, threads, [&](std::size_t t) {
    const Instance instance = generate_smoothed(base_values, 1, phi, derive_seed(seed, t), scale_log2);
    hit[t] = compute_delta_min(instance, k).value.units() <= threshold;
  });

  TailEstimate estimate;
  estimate.trials = trials;
  estimate.hits = static_cast<std::uint64_t>(std::count(hit.begin(), hit.end(), 1));
  estimate.empirical = static_cast<double>(estimate.hits) / static_cast<double>(trials);
  estimate.bound = std::pow(2.0, k + 1) * std::pow(static_cast<double>(n), k) * to_double(alpha) * to_double(phi);
  estimate.vacuous = estimate.bound >= 1;
  const double q = std::min(estimate.bound, 1.0);
  estimate.sigma = std::sqrt(q * (1 - q) / static_cast<double>(trials));
  return estimate;
}

}  // namespace kswap

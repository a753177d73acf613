#include "cli.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "kswap/analysis.hpp"
#include "kswap/error.hpp"
#include "kswap/experiments.hpp"
#include "kswap/instance.hpp"
#include "kswap/oracle.hpp"
#include "kswap/search.hpp"

namespace kswap::cli {

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::invalid_argument, "cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path);
  if (!file) throw Error(ErrorCode::invalid_argument, "cannot write '" + path + "'");
  file << text;
}

std::string exact_line(Exact v, int scale) {
  std::ostringstream out;
  out << format_reduced(v, scale) << " (" << std::setprecision(17) << to_double(v, scale) << ")";
  return out.str();
}

std::string job_list(const std::vector<JobId>& jobs) {
  std::string s = "[";
  for (std::size_t i = 0; i < jobs.size(); ++i) s += (i ? "," : "") + std::to_string(jobs[i]);
  return s + "]";
}

std::vector<Rational> read_bases(const std::string& path) {
  const std::string text = slurp(path);
  std::vector<Rational> bases;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '[') {
    for (const auto& v : nlohmann::json::parse(text)) {
      if (v.is_string()) bases.push_back(parse_rational(v.get<std::string>()));
      else if (v.is_number_integer()) bases.push_back(Rational::integer(v.get<std::int64_t>()));
      else {
        std::ostringstream s;
        s << std::setprecision(17) << v.get<double>();
        bases.push_back(parse_rational(s.str()));
      }
    }
  } else {
    std::istringstream in(text);
    std::string token;
    while (in >> token) bases.push_back(parse_rational(token));
  }
  return bases;
}

struct GenArgs {
  std::string kind = "uniform";
  int n = 0;
  int m = 0;
  std::string phi = "1";
  std::string bases_file;
  std::string bases_pattern = "zero";
  std::uint64_t seed = 0;
  int scale_log2 = kDefaultScaleLog2;
  std::string label;
  std::string out = "-";
};

int cmd_gen(const GenArgs& a, std::ostream& out) {
  Instance instance;
  if (a.kind == "uniform") {
    instance = generate_uniform(a.n, a.m, a.seed, a.scale_log2);
  } else if (a.kind == "smoothed") {
    const Rational phi = parse_rational(a.phi);
    const auto bases = a.bases_file.empty() ? make_bases(parse_base_pattern(a.bases_pattern), a.n, phi)
                                            : read_bases(a.bases_file);
    if (static_cast<int>(bases.size()) != a.n)
      throw Error(ErrorCode::invalid_argument, "bases file holds " + std::to_string(bases.size()) +
                                                   " values, expected n = " + std::to_string(a.n));
    instance = generate_smoothed(bases, a.m, phi, a.seed, a.scale_log2);
  } else {
    throw Error(ErrorCode::invalid_argument, "--kind must be uniform or smoothed");
  }
  if (!a.label.empty()) instance.label = a.label;
  emit(a.out, write_instance(instance), out);
  return ok;
}

struct RunArgs {
  std::string instance;
  int k = 2;
  std::string init = "all-on-one";
  std::string pivot = "first";
  std::uint64_t seed = 0;
  std::string init_schedule;
  std::string trace_out;
  std::string stats_out;
  std::string schedule_out;
  std::uint64_t iteration_cap = 0;
  std::uint64_t budget = kDefaultWorkBudget;
};

int cmd_run(const RunArgs& a, std::ostream& out, std::ostream& err) {
  const Instance instance = read_instance_file(a.instance);
  InitStrategy init{parse_init_kind(a.init), derive_seed(a.seed, 1), {}};
  if (init.kind == InitKind::file) {
    if (a.init_schedule.empty()) throw Error(ErrorCode::invalid_argument, "--init file needs --init-schedule");
    init.assignment = parse_schedule(slurp(a.init_schedule));
  }
  const PivotRule pivot{parse_pivot_kind(a.pivot), derive_seed(a.seed, 2)};
  RunOptions options;
  options.iteration_cap = a.iteration_cap;
  options.delta_min_budget = a.budget;

  std::ofstream trace_file;
  if (!a.trace_out.empty()) {
    trace_file.open(a.trace_out);
    if (!trace_file) throw Error(ErrorCode::invalid_argument, "cannot write '" + a.trace_out + "'");
  }
  const TraceSink sink = [&](const TraceRecord& r) {
    if (trace_file) trace_file << write_trace_record(r, instance.scale_log2) << '\n';
  };
  const RunResult result = run(instance, a.k, init, pivot, sink, options);

  if (!a.stats_out.empty()) emit(a.stats_out, write_run_stats(result.stats, instance.scale_log2), out);
  if (!a.schedule_out.empty()) emit(a.schedule_out, write_schedule(result.schedule), out);

  const auto certificate = oracle::verify_local_opt(instance, result.schedule.assignment(), a.k, a.budget);
  out << "T " << result.stats.iterations << "\n"
      << "makespan " << exact_line(result.stats.final_makespan, instance.scale_log2) << "\n"
      << "certified " << (certificate.locally_optimal ? "yes" : "no") << " (" << certificate.moves_examined
      << " moves examined)\n";
  if (!certificate.locally_optimal) {
    err << "final schedule admits an improving move: " << write_move(*certificate.counterexample) << "\n";
    return validation;
  }
  return ok;
}

int cmd_deltamin(const std::string& path, int k, bool cross_check, std::uint64_t budget, std::ostream& out,
                 std::ostream& err) {
  const Instance instance = read_instance_file(path);
  const DeltaMin dm = compute_delta_min(instance, k, budget);
  if (dm.is_zero()) {
    out << "delta_min 0\nwitness A=" << job_list(dm.a) << " B=" << job_list(dm.b) << "\n";
    err << "zero-delta: two disjoint job sets have equal total processing time\n";
    return zero_delta;
  }
  out << "delta_min " << exact_line(dm.value, instance.scale_log2) << "\n"
      << "exact " << format_exact(dm.value, instance.scale_log2) << "\n"
      << "witness A=" << job_list(dm.a) << " B=" << job_list(dm.b) << "\n";
  if (cross_check) {
    const Exact reference = oracle::delta_min_reference(instance, k, budget);
    const bool agree = reference == dm.value;
    out << "cross-check " << (agree ? "agree" : "DISAGREE") << " " << format_reduced(reference, instance.scale_log2)
        << "\n";
    if (!agree) return validation;
  }
  return ok;
}

int cmd_verify(const std::string& instance_path, const std::string& schedule_path, int k, std::uint64_t budget,
               std::ostream& out) {
  const Instance instance = read_instance_file(instance_path);
  const auto assignment = parse_schedule(slurp(schedule_path));
  const auto result = oracle::verify_local_opt(instance, assignment, k, budget);
  nlohmann::ordered_json doc;
  doc["locally_optimal"] = result.locally_optimal;
  doc["moves_examined"] = result.moves_examined;
  if (result.counterexample) doc["counterexample"] = nlohmann::json::parse(write_move(*result.counterexample));
  out << doc.dump(2) << "\n";
  return result.locally_optimal ? ok : not_locally_optimal;
}

int cmd_experiment(const std::string& config_path, const std::string& trials_out, const std::string& summary_out,
                   int threads, std::ostream& out) {
  ExperimentConfig config = parse_experiment_config(slurp(config_path));
  if (!trials_out.empty()) config.trials_csv = trials_out;
  if (!summary_out.empty()) config.summary_csv = summary_out;
  if (threads > 0) config.threads = threads;
  const auto records = run_batch(config);
  const auto rows = summarize(records);
  emit(config.trials_csv, trials_csv(records), out);
  emit(config.summary_csv, summary_csv(rows), out);
  std::uint64_t flagged = 0;
  for (const auto& r : records) flagged += r.flagged() ? 1 : 0;
  if (config.trials_csv != "-" && config.summary_csv != "-")
    out << records.size() << " trials, " << flagged << " flagged\n";
  return flagged == 0 ? ok : validation;
}

int cmd_validate(const std::string& trace_path, const std::string& instance_path, int k, std::uint64_t budget,
                 std::uint64_t seed, const std::string& out_path, std::ostream& out) {
  const Instance instance = read_instance_file(instance_path);
  std::ifstream in(trace_path);
  if (!in) throw Error(ErrorCode::invalid_argument, "cannot open '" + trace_path + "'");
  const auto trace = read_trace(in, instance.scale_log2);
  ValidationOptions options;
  options.delta_min_budget = budget;
  options.seed = seed;
  const ValidationReport report = validate_trace(trace, instance, k, options);
  emit(out_path, write_validation_report(report), out);
  return report.all_pass() ? ok : validation;
}

int exit_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::budget_exceeded: return budget;
    case ErrorCode::zero_delta: return zero_delta;
    case ErrorCode::iteration_limit: return internal;
    default: return usage;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"k-swap local search for makespan scheduling on identical machines"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate an instance");
  gen_cmd->add_option("--kind", gen.kind, "uniform or smoothed")->check(CLI::IsMember({"uniform", "smoothed"}));
  gen_cmd->add_option("--n", gen.n, "Number of jobs")->required();
  gen_cmd->add_option("--m", gen.m, "Number of machines")->required();
  gen_cmd->add_option("--phi", gen.phi, "Density bound, e.g. 8 or 3/2");
  gen_cmd->add_option("--bases-file", gen.bases_file, "Per-job interval bases (JSON list or whitespace separated)");
  gen_cmd->add_option("--bases-pattern", gen.bases_pattern, "zero, clustered or spread");
  gen_cmd->add_option("--seed", gen.seed, "Generator seed");
  gen_cmd->add_option("--scale-log2", gen.scale_log2, "Grid resolution exponent");
  gen_cmd->add_option("--label", gen.label, "Instance label");
  gen_cmd->add_option("--out", gen.out, "Output path, '-' for stdout");

  RunArgs runa;
  auto* run_cmd = app.add_subcommand("run", "Run k-swap local search to a local optimum");
  run_cmd->add_option("--instance", runa.instance)->required();
  run_cmd->add_option("--k", runa.k)->required();
  run_cmd->add_option("--init", runa.init, "all-on-one, round-robin, lpt, random or file");
  run_cmd->add_option("--pivot", runa.pivot, "first, best or random");
  run_cmd->add_option("--seed", runa.seed, "Seed for random init and random pivot");
  run_cmd->add_option("--init-schedule", runa.init_schedule, "Schedule JSON for --init file");
  run_cmd->add_option("--trace-out", runa.trace_out, "JSON Lines trace");
  run_cmd->add_option("--stats-out", runa.stats_out, "Run statistics JSON");
  run_cmd->add_option("--schedule-out", runa.schedule_out, "Final schedule JSON");
  run_cmd->add_option("--iteration-cap", runa.iteration_cap, "0 selects min(m^n, 2^40)");
  run_cmd->add_option("--budget", runa.budget, "Work budget for delta_min and certification");

  std::string dm_instance;
  int dm_k = 2;
  bool dm_cross = false;
  std::uint64_t dm_budget = kDefaultWorkBudget;
  auto* dm_cmd = app.add_subcommand("deltamin", "Exact delta_min with witness");
  dm_cmd->add_option("--instance", dm_instance)->required();
  dm_cmd->add_option("--k", dm_k)->required();
  dm_cmd->add_flag("--cross-check", dm_cross, "Compare against the independent reference enumeration");
  dm_cmd->add_option("--budget", dm_budget);

  std::string v_instance, v_schedule;
  int v_k = 2;
  std::uint64_t v_budget = kDefaultWorkBudget;
  auto* verify_cmd = app.add_subcommand("verify", "Certify k-swap local optimality by exhaustive search");
  verify_cmd->add_option("--instance", v_instance)->required();
  verify_cmd->add_option("--schedule", v_schedule)->required();
  verify_cmd->add_option("--k", v_k)->required();
  verify_cmd->add_option("--budget", v_budget);

  std::string e_config, e_trials, e_summary;
  int e_threads = 0;
  auto* exp_cmd = app.add_subcommand("experiment", "Run a seeded Monte-Carlo batch");
  exp_cmd->add_option("--config", e_config)->required();
  exp_cmd->add_option("--trials-out", e_trials, "Overrides trials_csv from the config");
  exp_cmd->add_option("--summary-out", e_summary, "Overrides summary_csv from the config");
  exp_cmd->add_option("--threads", e_threads);

  std::string t_trace, t_instance, t_out = "-";
  int t_k = 2;
  std::uint64_t t_budget = kDefaultWorkBudget;
  std::uint64_t t_seed = 0;
  auto* val_cmd = app.add_subcommand("validate-trace", "Run every trace check");
  val_cmd->add_option("--trace", t_trace)->required();
  val_cmd->add_option("--instance", t_instance)->required();
  val_cmd->add_option("--k", t_k)->required();
  val_cmd->add_option("--budget", t_budget);
  val_cmd->add_option("--seed", t_seed, "Recorded in the report for reproduction");
  val_cmd->add_option("--out", t_out, "Report path, '-' for stdout");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return usage;
  }

  try {
    if (*gen_cmd) return cmd_gen(gen, out);
    if (*run_cmd) return cmd_run(runa, out, err);
    if (*dm_cmd) return cmd_deltamin(dm_instance, dm_k, dm_cross, dm_budget, out, err);
    if (*verify_cmd) return cmd_verify(v_instance, v_schedule, v_k, v_budget, out);
    if (*exp_cmd) return cmd_experiment(e_config, e_trials, e_summary, e_threads, out);
    if (*val_cmd) return cmd_validate(t_trace, t_instance, t_k, t_budget, t_seed, t_out, out);
  } catch (const Error& e) {
    err << e.what() << "\n";
    return exit_for(e.code());
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return usage;
  }
  return usage;
}

}  // namespace kswap::cli

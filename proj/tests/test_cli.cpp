#include <doctest.h>

#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "helpers.hpp"

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = kswap::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string read(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("deltamin prints a reduced fraction") {
  th::TempDir dir;
  write(dir.file("i.json"), R"({"m": 2, "jobs_float": [0.5, 0.375, 0.125]})");
  const auto r = call({"deltamin", "--instance", dir.file("i.json"), "--k", "2", "--cross-check"});
  CHECK(r.code == 0);
  CHECK(r.out.find("delta_min 1/8 (0.125)") != std::string::npos);
  CHECK(r.out.find("witness A=[2] B=[]") != std::string::npos);
  CHECK(r.out.find("cross-check agree") != std::string::npos);
  write(dir.file("z.json"), R"({"m": 2, "jobs_float": [0.5, 0.5]})");
  CHECK(call({"deltamin", "--instance", dir.file("z.json"), "--k", "2"}).code == kswap::cli::zero_delta);
  write(dir.file("big.json"), R"({"m": 2, "jobs_float": [0.5, 0.25, 0.125, 0.0625, 0.03125]})");
  CHECK(call({"deltamin", "--instance", dir.file("big.json"), "--k", "3", "--budget", "5"}).code ==
        kswap::cli::budget);
}

TEST_CASE("gen run verify pipeline") {
  th::TempDir dir;
  const auto inst = dir.file("inst.json");
  REQUIRE(call({"gen", "--kind", "smoothed", "--n", "8", "--m", "3", "--phi", "4", "--bases-pattern", "spread",
                "--seed", "5", "--out", inst})
              .code == 0);
  const auto r = call({"run", "--instance", inst, "--k", "2", "--init", "random", "--pivot", "random", "--seed",
                       "3", "--trace-out", dir.file("t.jsonl"), "--stats-out", dir.file("s.json"),
                       "--schedule-out", dir.file("sched.json")});
  CHECK(r.code == 0);
  CHECK(r.out.find("certified yes") != std::string::npos);
  const auto v = call({"verify", "--instance", inst, "--schedule", dir.file("sched.json"), "--k", "2"});
  CHECK(v.code == 0);
  CHECK(v.out.find("\"locally_optimal\": true") != std::string::npos);
  const auto val = call({"validate-trace", "--trace", dir.file("t.jsonl"), "--instance", inst, "--k", "2"});
  CHECK(val.code == 0);
}

TEST_CASE("verify exit code distinguishes counterexamples") {
  th::TempDir dir;
  write(dir.file("i.json"), R"({"m": 2, "jobs_float": [0.5, 0.375, 0.125]})");
  write(dir.file("s.json"), R"({"assignment": [0, 0, 0]})");
  const auto r = call({"verify", "--instance", dir.file("i.json"), "--schedule", dir.file("s.json"), "--k", "2"});
  CHECK(r.code == kswap::cli::not_locally_optimal);
  CHECK(r.out.find("counterexample") != std::string::npos);
}

TEST_CASE("tampered trace fails validation with exit 4") {
  th::TempDir dir;
  const auto inst = dir.file("inst.json");
  REQUIRE(call({"gen", "--n", "7", "--m", "2", "--seed", "9", "--out", inst}).code == 0);
  REQUIRE(call({"run", "--instance", inst, "--k", "2", "--trace-out", dir.file("t.jsonl")}).code == 0);
  std::string trace = read(dir.file("t.jsonl"));
  // inflate the first phi by one grid unit
  const auto pos = trace.find("\"phi\":\"");
  REQUIRE(pos != std::string::npos);
  const auto start = pos + 7;
  const auto slash = trace.find('/', start);
  const std::string num = trace.substr(start, slash - start);
  trace.replace(start, slash - start, std::to_string(std::stoull(num) + 1));
  write(dir.file("bad.jsonl"), trace);
  const auto r = call({"validate-trace", "--trace", dir.file("bad.jsonl"), "--instance", inst, "--k", "2"});
  CHECK(r.code == kswap::cli::validation);
  CHECK(r.out.find("\"pass\": false") != std::string::npos);
}

TEST_CASE("usage and input errors exit 2") {
  CHECK(call({}).code == kswap::cli::usage);
  CHECK(call({"frobnicate"}).code == kswap::cli::usage);
  CHECK(call({"run", "--k", "2"}).code == kswap::cli::usage);
  CHECK(call({"deltamin", "--instance", "/nonexistent/x.json", "--k", "2"}).code == kswap::cli::usage);
  CHECK(call({"gen", "--kind", "gaussian", "--n", "3", "--m", "2"}).code == kswap::cli::usage);
  CHECK(call({"--help"}).code == 0);
}

TEST_CASE("experiment writes both CSVs") {
  th::TempDir dir;
  write(dir.file("c.json"), R"({"n": [5, 6], "m": 2, "k": 2, "trials": 2, "master_seed": 3})");
  const auto r = call({"experiment", "--config", dir.file("c.json"), "--trials-out", dir.file("t.csv"),
                       "--summary-out", dir.file("s.csv")});
  CHECK(r.code == 0);
  CHECK(r.out.find("4 trials, 0 flagged") != std::string::npos);
  const auto trials = read(dir.file("t.csv"));
  CHECK(std::count(trials.begin(), trials.end(), '\n') == 5);
  const auto summary = read(dir.file("s.csv"));
  CHECK(std::count(summary.begin(), summary.end(), '\n') == 3);
}

TEST_CASE("seeded commands are byte-identical on rerun") {
  th::TempDir dir;
  for (const char* tag : {"a", "b"}) {
    const std::string t = tag;
    REQUIRE(call({"gen", "--kind", "uniform", "--n", "9", "--m", "3", "--seed", "42", "--out", dir.file(t + ".json")})
                .code == 0);
    REQUIRE(call({"run", "--instance", dir.file(t + ".json"), "--k", "2", "--init", "random", "--pivot", "random",
                  "--seed", "6", "--trace-out", dir.file(t + ".jsonl"), "--stats-out", dir.file(t + ".stats")})
                .code == 0);
  }
  CHECK(read(dir.file("a.json")) == read(dir.file("b.json")));
  CHECK(read(dir.file("a.jsonl")) == read(dir.file("b.jsonl")));
  CHECK(read(dir.file("a.stats")) == read(dir.file("b.stats")));
  CHECK_FALSE(read(dir.file("a.jsonl")).empty());
}

}

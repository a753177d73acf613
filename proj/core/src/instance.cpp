#include "kswap/instance.hpp"

#include <bit>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "kswap/error.hpp"
#include "kswap/random.hpp"

namespace kswap {

using nlohmann::json;

Exact Instance::total() const {
  Exact sum;
  for (const auto p : jobs) sum += p;
  return sum;
}

void validate(const Instance& instance) {
  if (instance.machines < 1) throw Error(ErrorCode::invalid_argument, "need at least one machine");
  if (instance.jobs.empty()) throw Error(ErrorCode::invalid_argument, "need at least one job");
  if (instance.scale_log2 < 1 || instance.scale_log2 > kMaxScaleLog2)
    throw Error(ErrorCode::inconsistent_scale,
                "scale_log2 must lie in [1, " + std::to_string(kMaxScaleLog2) + "]");
  const auto headroom = static_cast<std::uint64_t>(instance.machines) * instance.jobs.size() * 8;
  if (std::bit_width(headroom) + instance.scale_log2 > 125)
    throw Error(ErrorCode::inconsistent_scale, "instance too large for 128-bit exact arithmetic");
  const int128 one = int128(1) << instance.scale_log2;
  for (std::size_t j = 0; j < instance.jobs.size(); ++j) {
    const int128 v = instance.jobs[j].units();
    if (v <= 0)
      throw Error(ErrorCode::non_positive_time, "job " + std::to_string(j) + " has non-positive processing time");
    if (v > one)
      throw Error(ErrorCode::inconsistent_scale,
                  "job " + std::to_string(j) + " exceeds 1 at scale 2^" + std::to_string(instance.scale_log2));
  }
}

Instance make_instance(int machines, int scale_log2, std::vector<ProcessingTime> jobs, std::string label) {
  Instance instance{machines, scale_log2, std::move(jobs), std::move(label)};
  validate(instance);
  return instance;
}

namespace {

// Smallest s with v * 2^s integral.
int required_scale(double v) {
  int s = 0;
  double x = v;
  while (std::floor(x) != x) {
    x *= 2;  // exact for binary floats
    ++s;
  }
  return s;
}

}  // namespace

Instance instance_from_floats(int machines, std::span<const double> values, std::string label) {
  int scale = kDefaultScaleLog2;
  for (const double v : values) {
    if (!std::isfinite(v) || v <= 0)
      throw Error(ErrorCode::non_positive_time, "processing times must be positive and finite");
    if (v > 1) throw Error(ErrorCode::inconsistent_scale, "processing times must lie in (0, 1]");
    scale = std::max(scale, required_scale(v));
  }
  if (scale > kMaxScaleLog2)
    throw Error(ErrorCode::inconsistent_scale, "float input needs a grid finer than 2^-" + std::to_string(kMaxScaleLog2));
  std::vector<ProcessingTime> jobs;
  jobs.reserve(values.size());
  for (const double v : values) jobs.emplace_back(static_cast<int128>(std::ldexp(v, scale)));
  return make_instance(machines, scale, std::move(jobs), std::move(label));
}

Instance generate_uniform(int n, int machines, std::uint64_t seed, int scale_log2) {
  if (n < 1 || machines < 1 || scale_log2 < 1 || scale_log2 > kMaxScaleLog2)
    throw Error(ErrorCode::invalid_argument, "generate_uniform: need n >= 1, m >= 1, 1 <= scale_log2 <= 96");
  Rng rng(seed);
  const uint128 range = uint128(1) << scale_log2;
  std::vector<ProcessingTime> jobs;
  jobs.reserve(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) jobs.emplace_back(static_cast<int128>(rng.below(range) + 1));
  return make_instance(machines, scale_log2, std::move(jobs),
                       "uniform n=" + std::to_string(n) + " m=" + std::to_string(machines) +
                           " seed=" + std::to_string(seed));
}

Instance generate_smoothed(std::span<const Rational> bases, int machines, const Rational& phi, std::uint64_t seed,
                           int scale_log2) {
  if (bases.empty() || machines < 1 || scale_log2 < 1 || scale_log2 > kMaxScaleLog2)
    throw Error(ErrorCode::invalid_argument, "generate_smoothed: need n >= 1, m >= 1, 1 <= scale_log2 <= 96");
  if (phi < Rational::integer(1)) throw Error(ErrorCode::invalid_argument, "phi must be at least 1");
  const Rational width = Rational::integer(1) / phi;
  const Rational max_base = Rational::integer(1) - width;
  Rng rng(seed);
  std::vector<ProcessingTime> jobs;
  jobs.reserve(bases.size());
  for (std::size_t j = 0; j < bases.size(); ++j) {
    const Rational& b = bases[j];
    if (b < Rational::integer(0) || b > max_base)
      throw Error(ErrorCode::base_out_of_range, "base " + to_string(b) + " of job " + std::to_string(j) +
                                                    " outside [0, 1 - 1/phi]");
    // Grid points N with b < N / 2^s <= b + 1/phi.
    const uint128 lo = floor_scaled(b, scale_log2);
    const uint128 hi = floor_scaled(b + width, scale_log2);
    if (hi <= lo)
      throw Error(ErrorCode::invalid_argument, "interval of width 1/phi holds no grid point at this scale");
    jobs.emplace_back(static_cast<int128>(lo + 1 + rng.below(hi - lo)));
  }
  return make_instance(machines, scale_log2, std::move(jobs),
                       "smoothed n=" + std::to_string(bases.size()) + " m=" + std::to_string(machines) +
                           " phi=" + to_string(phi) + " seed=" + std::to_string(seed));
}

std::vector<Rational> make_bases(BasePattern pattern, int n, const Rational& phi) {
  if (n < 1) throw Error(ErrorCode::invalid_argument, "make_bases: n must be positive");
  const Rational top = Rational::integer(1) - Rational::integer(1) / phi;
  std::vector<Rational> bases(static_cast<std::size_t>(n), Rational::integer(0));
  switch (pattern) {
    case BasePattern::zero:
      break;
    case BasePattern::clustered:
      for (auto& b : bases) b = top;
      break;
    case BasePattern::spread:
      if (n > 1)
        for (int j = 0; j < n; ++j) bases[static_cast<std::size_t>(j)] = top * Rational::make(j, n - 1);
      break;
  }
  return bases;
}

Instance generate(const GeneratorConfig& config) {
  switch (config.kind) {
    case GeneratorKind::uniform:
      return generate_uniform(config.n, config.machines, config.seed, config.scale_log2);
    case GeneratorKind::smoothed: {
      if (!config.bases.empty() && static_cast<int>(config.bases.size()) != config.n)
        throw Error(ErrorCode::invalid_argument, "smoothed generator needs exactly n bases");
      const auto bases = config.bases.empty() ? make_bases(BasePattern::zero, config.n, config.phi) : config.bases;
      return generate_smoothed(bases, config.machines, config.phi, config.seed, config.scale_log2);
    }
    case GeneratorKind::file:
      return read_instance_file(config.path);
  }
  throw Error(ErrorCode::invalid_argument, "unknown generator kind");
}

BasePattern parse_base_pattern(std::string_view text) {
  if (text == "zero") return BasePattern::zero;
  if (text == "clustered") return BasePattern::clustered;
  if (text == "spread") return BasePattern::spread;
  throw Error(ErrorCode::invalid_argument, "unknown base pattern '" + std::string(text) + "'");
}

std::string_view to_string(BasePattern pattern) {
  switch (pattern) {
    case BasePattern::zero: return "zero";
    case BasePattern::clustered: return "clustered";
    case BasePattern::spread: return "spread";
  }
  return "unknown";
}

namespace {

int128 numerator_from_json(const json& v) {
  if (v.is_number_unsigned()) return static_cast<int128>(v.get<std::uint64_t>());
  if (v.is_number_integer()) return static_cast<int128>(v.get<std::int64_t>());
  if (v.is_string()) return parse_int128(v.get<std::string>());
  throw Error(ErrorCode::malformed_document, "job numerators must be integers or decimal strings");
}

int int_field(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_number_integer())
    throw Error(ErrorCode::malformed_document, std::string("missing integer field '") + key + "'");
  return doc[key].get<int>();
}

}  // namespace

Instance parse_instance(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::malformed_document, e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::malformed_document, "instance must be a JSON object");
  const int machines = int_field(doc, "m");
  std::string label;
  if (doc.contains("label")) {
    if (!doc["label"].is_string()) throw Error(ErrorCode::malformed_document, "label must be a string");
    label = doc["label"].get<std::string>();
  }

  const bool has_exact = doc.contains("jobs");
  const bool has_float = doc.contains("jobs_float");
  if (has_exact == has_float)
    throw Error(ErrorCode::malformed_document, "instance needs exactly one of 'jobs' or 'jobs_float'");

  if (has_float) {
    if (!doc["jobs_float"].is_array()) throw Error(ErrorCode::malformed_document, "'jobs_float' must be an array");
    std::vector<double> values;
    for (const auto& v : doc["jobs_float"]) {
      if (!v.is_number()) throw Error(ErrorCode::malformed_document, "'jobs_float' entries must be numbers");
      values.push_back(v.get<double>());
    }
    if (values.empty()) throw Error(ErrorCode::malformed_document, "instance has no jobs");
    return instance_from_floats(machines, values, std::move(label));
  }

  const int scale = int_field(doc, "scale_log2");
  if (!doc["jobs"].is_array() || doc["jobs"].empty())
    throw Error(ErrorCode::malformed_document, "'jobs' must be a non-empty array");
  std::vector<ProcessingTime> jobs;
  for (const auto& v : doc["jobs"]) jobs.emplace_back(numerator_from_json(v));
  return make_instance(machines, scale, std::move(jobs), std::move(label));
}

std::string write_instance(const Instance& instance) {
  validate(instance);
  constexpr int128 json_safe = int128(1) << 53;
  json jobs = json::array();
  for (const auto p : instance.jobs) {
    if (p.units() <= json_safe)
      jobs.push_back(static_cast<std::int64_t>(p.units()));
    else
      jobs.push_back(int128_to_string(p.units()));
  }
  json doc = {{"m", instance.machines},
              {"scale_log2", instance.scale_log2},
              {"jobs", std::move(jobs)},
              {"label", instance.label}};
  return doc.dump(2) + "\n";
}

Instance read_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::invalid_argument, "cannot open instance file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_instance(buffer.str());
}

}  // namespace kswap

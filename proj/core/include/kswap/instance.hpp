#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kswap/exact.hpp"
#include "kswap/rational.hpp"

namespace kswap {

using JobId = int;
using MachineId = int;

// Processing time numerator on the instance grid; the value lies in (0, 1].
using ProcessingTime = Exact;

inline constexpr int kDefaultScaleLog2 = 53;

struct Instance {
  int machines = 1;
  int scale_log2 = kDefaultScaleLog2;
  std::vector<ProcessingTime> jobs;
  std::string label;

  int job_count() const { return static_cast<int>(jobs.size()); }
  ProcessingTime p(JobId j) const { return jobs[static_cast<std::size_t>(j)]; }
  Exact one() const { return Exact(int128(1) << scale_log2); }
  Exact total() const;

  friend bool operator==(const Instance&, const Instance&) = default;
};

// Throws kswap::Error when an invariant does not hold: m >= 1, n >= 1,
// 1 <= scale_log2 <= kMaxScaleLog2, every numerator in [1, 2^scale_log2],
// and the 128-bit headroom check for loads and potentials.
void validate(const Instance& instance);

Instance make_instance(int machines, int scale_log2, std::vector<ProcessingTime> jobs,
                       std::string label = {});

// Exact dyadic conversion of floats in (0, 1] onto the smallest common grid
// no coarser than 2^-53.
Instance instance_from_floats(int machines, std::span<const double> values, std::string label = {});

enum class GeneratorKind { uniform, smoothed, file };

enum class BasePattern {
  zero,       // b_j = 0
  clustered,  // b_j = 1 - 1/phi, every job shares the same interval
  spread,     // b_j evenly spaced over [0, 1 - 1/phi]
};

struct GeneratorConfig {
  GeneratorKind kind = GeneratorKind::uniform;
  int n = 1;
  int machines = 1;
  Rational phi = Rational::integer(1);
  std::vector<Rational> bases;
  std::uint64_t seed = 0;
  int scale_log2 = kDefaultScaleLog2;
  std::string path;  // kind == file
};

Instance generate_uniform(int n, int machines, std::uint64_t seed, int scale_log2 = kDefaultScaleLog2);

/// One-step smoothed instance: job j is drawn uniformly from the grid points
/// of (b_j, b_j + 1/phi]. The density of every job is exactly phi on its
/// interval and zero elsewhere in [0, 1].
Instance generate_smoothed(std::span<const Rational> bases, int machines, const Rational& phi,
                           std::uint64_t seed, int scale_log2 = kDefaultScaleLog2);

std::vector<Rational> make_bases(BasePattern pattern, int n, const Rational& phi);

Instance generate(const GeneratorConfig& config);

BasePattern parse_base_pattern(std::string_view text);
std::string_view to_string(BasePattern pattern);

// JSON documents; see README for the schema.
Instance parse_instance(std::string_view text);
std::string write_instance(const Instance& instance);
Instance read_instance_file(const std::string& path);

}  // namespace kswap
